"""Grid and instance checks for the laws linking aggregators and implications.

Every check returns a :class:`~acri.report.CheckReport`. A pass means no
violation above tolerance on the sampled grid or instances, nothing more.
Tolerance defaults to 1e-9 when all connectives are closed-form and 1e-6
when one of them is computed by bisection.
"""

from __future__ import annotations

import math
import random
import warnings
from typing import Callable, Iterable, Sequence

from .connectives import Aggregator, Negation
from .engine import FuzzySet, NonNormalWarning, Rule, complement, fmp_infer, fmt_infer
from .errors import SpecError
from .grid import DEFAULT_GRID, Grid
from .implications import Implication
from .report import NOISE_FLOOR, CheckReport, scan

AXIOMS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8")

DEFAULT_MODIFIERS: dict[str, Callable[[float], float]] = {
    "A6": lambda v: v * v,  # "very", experimental
    "A7": math.sqrt,  # "more or less", experimental
}


def default_tol(*ops) -> float:
    return 1e-9 if all(op.exact for op in ops) else 1e-6


def check_ac(a: Aggregator, i: Implication, grid: Grid = DEFAULT_GRID, tol: float | None = None) -> CheckReport:
    """``A(a, I(a, b)) <= b`` at every grid pair."""
    tol = default_tol(a, i) if tol is None else tol
    return scan("ac", grid.pairs(), lambda u, v: max(a(u, i(u, v)) - v, 0.0), tol, grid.describe())


def check_dac(
    a: Aggregator, i: Implication, n: Negation, grid: Grid = DEFAULT_GRID, tol: float | None = None
) -> CheckReport:
    """``A(N(b), I(a, b)) <= N(a)`` at every grid pair."""
    tol = default_tol(a, i, n) if tol is None else tol
    return scan("dac", grid.pairs(), lambda u, v: max(a(n(v), i(u, v)) - n(u), 0.0), tol, grid.describe())


def check_lia(a: Aggregator, i: Implication, grid: Grid = DEFAULT_GRID, tol: float | None = None) -> CheckReport:
    """``I(A(x, y), z) = I(x, I(y, z))`` on a sub-grid of at most 21 points per axis."""
    tol = default_tol(a, i) if tol is None else tol
    sub = grid.coarsen(21)
    triples = ((x, y, z) for x in sub for y in sub for z in sub)
    return scan("lia", triples, lambda x, y, z: abs(i(a(x, y), z) - i(x, i(y, z))), tol, sub.describe())


def check_cpn(i: Implication, n: Negation, grid: Grid = DEFAULT_GRID, tol: float | None = None) -> CheckReport:
    """``I(x, y) = I(N(y), N(x))`` at every grid pair."""
    tol = default_tol(i, n) if tol is None else tol
    return scan("cpn", grid.pairs(), lambda x, y: abs(i(x, y) - i(n(y), n(x))), tol, grid.describe())


# ---------------------------------------------------------------------------
# random instances


def random_fuzzy_set(
    rng: random.Random, size: int, prefix: str, normal: bool = True, co_normal: bool = False
) -> FuzzySet:
    """Uniform memberships; ``normal`` forces one 1, ``co_normal`` one 0 elsewhere."""
    values = [rng.random() for _ in range(size)]
    slots = rng.sample(range(size), 2) if size > 1 else [0, 0]
    if normal:
        values[slots[0]] = 1.0
    if co_normal:
        values[slots[1]] = 0.0
    return FuzzySet.of(values, prefix=prefix)


def random_rules(
    count: int, seed: int = 0, min_size: int = 3, max_size: int = 8, co_normal: bool = False
) -> list[Rule]:
    """Rules with normal antecedent and consequent on universes of random size.

    With ``co_normal`` every set also has a zero, so its standard complement
    is normal too; the modus tollens style axioms feed those complements in
    as inputs.
    """
    rng = random.Random(seed)
    return [
        Rule(
            random_fuzzy_set(rng, rng.randint(min_size, max_size), "x", co_normal=co_normal),
            random_fuzzy_set(rng, rng.randint(min_size, max_size), "y", co_normal=co_normal),
        )
        for _ in range(count)
    ]


def random_nested_inputs(rules: Sequence[Rule], seed: int = 0) -> list[tuple[FuzzySet, FuzzySet]]:
    """For each rule, inputs ``D' <= D''`` on its antecedent universe."""
    rng = random.Random(seed)
    pairs = []
    for r in rules:
        n = len(r.antecedent)
        small = [rng.random() for _ in range(n)]
        big = [max(s, rng.random()) for s in small]
        u = r.antecedent.universe
        pairs.append((FuzzySet(u, tuple(small)), FuzzySet(u, tuple(big))))
    return pairs


# ---------------------------------------------------------------------------
# axioms on fuzzy-set instances


def _defect_report(law, k, expected: FuzzySet, got: FuzzySet, defect, tol) -> tuple[float, tuple | None]:
    worst, where = 0.0, None
    for label, e, g in zip(got.universe, expected.memberships, got.memberships):
        d = defect(e, g)
        if d > worst:
            worst, where = d, (k, label)
    return worst, where


def _equal(e, g):
    return abs(e - g)


def _at_least(e, g):
    return max(e - g, 0.0)


def check_axioms(
    a: Aggregator,
    i: Implication,
    n: Negation,
    instances: Sequence[Rule],
    which: Iterable[str] = AXIOMS,
    modifier: Callable[[float], float] | None = None,
    inputs: Sequence[tuple[FuzzySet, FuzzySet]] | None = None,
    tol: float | None = None,
) -> list[CheckReport]:
    """One report per requested axiom, aggregated over ``instances``.

    A report fails as soon as one instance violates the axiom; the witness
    is ``(instance index, element label)`` of the worst violation and
    ``details`` lists every failing instance. (A2) compares the outputs for
    the nested input pairs in ``inputs``. (A6) and (A7) use ``modifier`` when
    given, squaring and square root otherwise.
    """
    which = [w.upper() for w in which]
    unknown = [w for w in which if w not in AXIOMS]
    if unknown:
        raise SpecError(f"unknown axiom(s) {unknown}; expected a subset of {AXIOMS}")
    if "A2" in which and inputs is None:
        raise SpecError("axiom A2 needs a second input per instance (pass inputs=[(D', D''), ...])")
    if inputs is not None and len(inputs) != len(instances):
        raise SpecError("inputs must hold one (D', D'') pair per instance")
    tol = default_tol(a, i, n) if tol is None else tol
    for r in instances:
        if not (r.antecedent.is_normal and r.consequent.is_normal):
            warnings.warn("check_axioms instance with a non-normal antecedent or consequent", NonNormalWarning)
        if {"A3", "A4", "A8"} & set(which):
            if not (complement(r.antecedent, n).is_normal and complement(r.consequent, n).is_normal):
                warnings.warn("check_axioms instance whose complement is not normal", NonNormalWarning)

    def one(axiom: str, k: int, r: Rule) -> tuple[float, tuple | None]:
        d, b = r.antecedent, r.consequent
        if axiom == "A1":
            return _defect_report(axiom, k, b, fmp_infer(a, i, r, d), _at_least, tol)
        if axiom == "A2":
            small, big = inputs[k]
            return _defect_report(axiom, k, fmp_infer(a, i, r, small), fmp_infer(a, i, r, big), _at_least, tol)
        if axiom == "A3":
            out = fmp_infer(a, i, r, complement(d, n))
            return _defect_report(axiom, k, out.map(lambda _: 1.0), out, _at_least, tol)
        if axiom == "A4":
            return _defect_report(axiom, k, complement(d, n), fmt_infer(a, i, r, complement(b, n)), _equal, tol)
        if axiom == "A5":
            return _defect_report(axiom, k, b, fmp_infer(a, i, r, d), _equal, tol)
        if axiom in ("A6", "A7"):
            m = modifier or DEFAULT_MODIFIERS[axiom]
            return _defect_report(axiom, k, b.map(m), fmp_infer(a, i, r, d.map(m)), _equal, tol)
        # A8
        return _defect_report(axiom, k, complement(b, n), fmp_infer(a, i, r, complement(d, n)), _equal, tol)

    reports = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonNormalWarning)
        for axiom in which:
            worst, witness, failing = 0.0, None, []
            for k, r in enumerate(instances):
                v, where = one(axiom, k, r)
                if v > tol:
                    failing.append(k)
                if v > worst:
                    worst, witness = v, where
            if worst < NOISE_FLOOR:
                worst = 0.0
            passed = worst <= tol
            details = {"instances": len(instances), "failing_instances": failing}
            if witness is not None and not passed:
                details["witness_rule"] = instances[witness[0]].to_dict()
            if axiom in ("A6", "A7"):
                details["modifier"] = "custom" if modifier else ("square" if axiom == "A6" else "sqrt")
                details["experimental"] = True
            reports.append(
                CheckReport(
                    law=axiom,
                    passed=passed,
                    worst_violation=worst,
                    witness=None if passed else witness,
                    grid="instances",
                    tolerance=tol,
                    details=details,
                )
            )
    return reports
