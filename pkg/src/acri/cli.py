"""``acri`` command line: inference, law checks, aggregator tabulation, demo.

Exit status is 0 on success, 1 when a law or tolerance check fails and 2 on
usage or validation errors.
"""

from __future__ import annotations

import csv
import functools
import json
import re
import sys
import warnings
from pathlib import Path

import click

from . import conformance as CF
from .classify import classify
from .constructions import METHODS, aggregator_from_implication, build, default_closed_form, max_deviation
from .engine import fmp_infer, fmt_infer, require_same_universe
from .errors import ACRIError
from .grid import Grid
from .specio import Document, load_json, load_scenario

GRID_LAWS = ("ac", "dac", "lia", "cpn")
LAWS = GRID_LAWS + tuple(a.lower() for a in CF.AXIOMS)


class InputError(click.ClickException):
    exit_code = 2


def _validation(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                return fn(*args, **kwargs)
            except ACRIError as exc:
                raise InputError(str(exc)) from None
            finally:
                for w in dict.fromkeys(str(w.message) for w in caught):
                    click.echo(f"warning: {w}", err=True)

    return wrapper


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _r6(v: float) -> float:
    return round(v, 6) + 0.0  # normalise -0.0


def parse_laws(spec: str) -> list[str]:
    """Comma-separated law names; ``a1..a8`` style ranges expand."""
    out: list[str] = []
    for tok in (t.strip().lower() for t in spec.split(",")):
        if not tok:
            continue
        m = re.fullmatch(r"a([1-8])\.\.a([1-8])", tok)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise click.BadParameter(f"empty axiom range {tok!r}", param_hint="--laws")
            out.extend(f"a{k}" for k in range(lo, hi + 1))
        elif tok in LAWS:
            out.append(tok)
        else:
            raise click.BadParameter(f"unknown law {tok!r}; known: {', '.join(LAWS)}", param_hint="--laws")
    if not out:
        raise click.BadParameter("no laws requested", param_hint="--laws")
    return list(dict.fromkeys(out))


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Aggregation-based fuzzy inference toolkit."""


@main.command()
@click.option("--mode", type=click.Choice(["fmp", "fmt"]), default="fmp", show_default=True)
@click.option("--scenario", "scenario_path", type=click.Path(dir_okay=False), required=True)
@click.option("--out", type=click.Path(dir_okay=False), help="Write the output document here instead of stdout.")
@_validation
def infer(mode, scenario_path, out):
    """Run FMP or FMT on a scenario file."""
    sc = load_scenario(scenario_path)
    run = fmp_infer if mode == "fmp" else fmt_infer
    result = run(sc.aggregator, sc.implication, sc.rule, sc.input)
    doc = {
        "name": sc.name,
        "mode": mode,
        "output": {"universe": list(result.universe), "memberships": [_r6(m) for m in result.memberships]},
    }
    failed = False
    if sc.expected_output is not None:
        require_same_universe(sc.expected_output, result)
        diffs = [g - e for g, e in zip(result.memberships, sc.expected_output.memberships)]
        worst = max(abs(d) for d in diffs)
        doc["max_abs_diff"] = _r6(worst)
        doc["tolerance"] = sc.tolerance
        failed = worst > sc.tolerance
    _emit(_dump(doc), out)
    if failed:
        click.echo(f"output differs from expected by {worst:.6g} (tolerance {sc.tolerance:g})", err=True)
        for label, e, d in zip(result.universe, sc.expected_output.memberships, diffs):
            click.echo(f"  {label}: expected {e:.6f}, got {e + d:.6f}, diff {d:+.6f}", err=True)
        sys.exit(1)


def _load_ops(path: str):
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    d = Document(doc.get("operators"))
    for key in ("aggregator", "implication"):
        if key not in doc:
            raise InputError(f"{path}: missing {key!r}")
    try:
        ops = (
            d.aggregator(doc["aggregator"], "$.aggregator"),
            d.implication(doc["implication"], "$.implication"),
            d.negation(doc.get("negation", "standard"), "$.negation"),
        )
    except ACRIError as exc:
        raise InputError(f"{path}: {exc}") from None
    return doc, d, ops


@main.command()
@click.option("--ops", "ops_path", type=click.Path(dir_okay=False), required=True, help="Operator JSON document.")
@click.option("--laws", default="ac,dac,lia,cpn", show_default=True, help="e.g. ac,dac,cpn or a1..a8")
@click.option("--grid", "grid_size", type=click.IntRange(min=2), default=101, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for random axiom instances.")
@click.option("--instances", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--report", type=click.Path(dir_okay=False), help="JSON report path; a .csv twin is written beside it.")
@_validation
def check(ops_path, laws, grid_size, seed, instances, report):
    """Check laws and axioms for an (aggregator, implication, negation) triple."""
    wanted = parse_laws(laws)
    doc, d, (a, i, n) = _load_ops(ops_path)
    grid = Grid.uniform(grid_size)
    reports = []
    for law in wanted:
        if law == "ac":
            reports.append(CF.check_ac(a, i, grid))
        elif law == "dac":
            reports.append(CF.check_dac(a, i, n, grid))
        elif law == "lia":
            reports.append(CF.check_lia(a, i, grid))
        elif law == "cpn":
            reports.append(CF.check_cpn(i, n, grid))
    axioms = [w.upper() for w in wanted if w not in GRID_LAWS]
    rules = None
    if axioms:
        if "rules" in doc:
            rules = [d.rule(r, f"$.rules[{k}]") for k, r in enumerate(doc["rules"])]
        else:
            rules = CF.random_rules(instances, seed, co_normal=True)
        inputs = CF.random_nested_inputs(rules, seed) if "A2" in axioms else None
        reports.extend(CF.check_axioms(a, i, n, rules, axioms, inputs=inputs))
    for r in reports:
        click.echo(r.csv_line())
    if report:
        full = {
            "ops": {"aggregator": a.to_dict(), "implication": i.to_dict(), "negation": n.to_dict()},
            "grid": {"description": grid.describe(), "points": list(grid.points)},
            "seed": seed,
            "instances": len(rules) if rules is not None else 0,
            "reports": [r.to_dict() for r in reports],
        }
        Path(report).write_text(_dump(full), encoding="utf-8")
        Path(report).with_suffix(".csv").write_text(
            "law,verdict,worst_violation,witness\n" + "".join(r.csv_line() + "\n" for r in reports), encoding="utf-8"
        )
    sys.exit(0 if all(r.passed for r in reports) else 1)


@main.command("build-agg")
@click.option("--implication", "imp_path", type=click.Path(dir_okay=False), required=True)
@click.option("--method", type=click.Choice(METHODS), default="numeric-infimum", show_default=True)
@click.option("--grid", "grid_size", type=click.IntRange(min=2), default=101, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), help="CSV path; stdout when omitted.")
@_validation
def build_agg(imp_path, method, grid_size, out):
    """Tabulate the aggregator constructed from an implication as x,y,value CSV."""
    doc = load_json(imp_path)
    if not isinstance(doc, dict):
        raise InputError(f"{imp_path}: expected a JSON object")
    d = Document(doc.get("operators"))
    spec = doc.get("implication", doc)
    imp = d.implication(spec, "$.implication" if "implication" in doc else "$")
    agg = build(imp, method)
    grid = Grid.uniform(grid_size)
    rows = [(x, y, agg(x, y)) for x, y in grid.pairs()]
    fh = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "value"])
        w.writerows([f"{x:.6f}", f"{y:.6f}", f"{_r6(v):.6f}"] for x, y, v in rows)
    finally:
        if out:
            fh.close()
    # compare with the other construction when there is one
    other = default_closed_form(imp) if method == "numeric-infimum" else "numeric-infimum"
    if other is not None:
        oracle = aggregator_from_implication(imp) if other == "numeric-infimum" else build(imp, other)
        dev, at = max_deviation(agg, oracle, grid)
        click.echo(f"max deviation {method} vs {other}: {dev:.3g} at {at}", err=True)


@main.command("classify-demo")
@click.option("--attr1", type=float, required=True)
@click.option("--attr2", type=float, required=True)
@click.option("--config", type=click.Path(dir_okay=False), help="Classifier config; bundled demo when omitted.")
@_validation
def classify_demo(attr1, attr2, config):
    """Classify an entity with the bundled two-attribute rule base."""
    result = classify(attr1, attr2, load_json(config) if config else None)
    click.echo(_dump(result), nl=False)
    click.echo(f"class: {result['class']}", err=True)


if __name__ == "__main__":
    main()
