"""JSON operator documents: parsing with located errors, and scenario loading.

An operator is a JSON object with a ``"family"`` tag. Sub-operators may be
nested inline or referenced by name, either as a bare string or as
``{"ref": "name"}``, from the document's ``"operators"`` table. Built-in
parameter-free families can also be written as bare strings (``"min"``,
``"standard"``, ``"lukasiewicz"``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable

from . import connectives as C
from . import constructions as K
from . import implications as I
from .engine import FuzzySet, Rule, product_set
from .errors import ACRIError, SpecError
from .generators import (
    Automorphism,
    Generator,
    IdentityAutomorphism,
    PowerAutomorphism,
    TabulatedAutomorphism,
)

SIMPLE_NEGATIONS = {
    "bottom": C.BottomNegation,
    "top": C.TopNegation,
    "standard": C.StandardNegation,
}

SIMPLE_AGGREGATORS = {
    "min": C.Minimum,
    "product": C.Product,
    "lukasiewicz-tnorm": C.LukasiewiczTNorm,
    "max": C.Maximum,
    "probabilistic-sum": C.ProbabilisticSum,
    "lukasiewicz-tconorm": C.LukasiewiczTConorm,
    "greatest-disjunctor": C.GreatestDisjunctor,
    "smallest-disjunctor": C.SmallestDisjunctor,
}

SIMPLE_IMPLICATIONS = {"lukasiewicz": I.Lukasiewicz, "reichenbach": I.Reichenbach}


class Document:
    """Resolves operator specs against an optional named-operator table."""

    def __init__(self, operators: dict[str, Any] | None = None):
        if operators is not None and not isinstance(operators, dict):
            raise SpecError("$.operators: expected an object mapping names to operator specs")
        self.table = operators or {}
        self._resolving: set[str] = set()

    # -- plumbing -------------------------------------------------------
    def _deref(self, spec, where: str, parse: Callable):
        name = spec if isinstance(spec, str) else spec.get("ref") if isinstance(spec, dict) else None
        if name is None or name not in self.table:
            return None
        if name in self._resolving:
            raise SpecError(f"{where}: cyclic reference to operator {name!r}")
        self._resolving.add(name)
        try:
            return parse(self.table[name], f"$.operators.{name}")
        finally:
            self._resolving.discard(name)

    @staticmethod
    def _obj(spec, where: str) -> dict:
        if isinstance(spec, str):
            return {"family": spec}
        if not isinstance(spec, dict):
            raise SpecError(f"{where}: expected an object or a name, got {type(spec).__name__}")
        if isinstance(spec.get("ref"), str):
            raise SpecError(f"{where}: unknown operator reference {spec['ref']!r}")
        if "family" not in spec:
            raise SpecError(f"{where}: missing \"family\"")
        return spec

    @staticmethod
    def _field(spec: dict, key: str, where: str):
        if key not in spec:
            raise SpecError(f"{where}: family {spec['family']!r} needs field {key!r}")
        return spec[key]

    def _build(self, where: str, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ACRIError as exc:
            raise SpecError(f"{where}: {exc}") from None
        except (TypeError, ValueError) as exc:
            raise SpecError(f"{where}: {exc}") from None

    # -- leaves ---------------------------------------------------------
    def generator(self, spec, where: str = "$", kind: str | None = None) -> Generator:
        if isinstance(spec, str):
            spec = {"name": spec}
        if not isinstance(spec, dict) or "name" not in spec:
            raise SpecError(f"{where}: a generator needs a \"name\"")
        params = {k: v for k, v in spec.items() if k not in ("name", "kind")}
        for k, v in params.items():
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise SpecError(f"{where}.{k}: generator parameter must be a number")
        k = spec.get("kind", kind or "any")
        return self._build(where, Generator.of, spec["name"], k, **{p: float(v) for p, v in params.items()})

    def automorphism(self, spec, where: str = "$") -> Automorphism:
        spec = self._obj(spec, where)
        fam = spec["family"]
        if fam == "identity":
            return IdentityAutomorphism()
        if fam == "power":
            return self._build(where, PowerAutomorphism, float(self._field(spec, "exponent", where)))
        if fam in ("tabulated", "tabulated-monotone"):
            return self._build(
                where, TabulatedAutomorphism, tuple(self._field(spec, "x", where)), tuple(self._field(spec, "value", where))
            )
        raise SpecError(f"{where}: unknown automorphism family {fam!r}")

    def copula(self, spec, where: str = "$") -> I.Copula:
        spec = self._obj(spec, where)
        fam = spec["family"]
        if fam == "product":
            return I.ProductCopula()
        if fam == "lukasiewicz":
            return I.LukasiewiczCopula()
        if fam == "archimedean":
            g = self.generator(self._field(spec, "generator", where), f"{where}.generator", "copula-additive")
            return self._build(where, I.ArchimedeanCopula, g)
        raise SpecError(f"{where}: unknown copula family {fam!r}")

    # -- operators ------------------------------------------------------
    def negation(self, spec, where: str = "$") -> C.Negation:
        hit = self._deref(spec, where, self.negation)
        if hit is not None:
            return hit
        spec = self._obj(spec, where)
        fam = spec["family"]
        if fam in SIMPLE_NEGATIONS:
            return SIMPLE_NEGATIONS[fam]()
        if fam == "conjugated":
            base = self.negation(self._field(spec, "base", where), f"{where}.base")
            return C.ConjugatedNegation(base, self.automorphism(self._field(spec, "phi", where), f"{where}.phi"))
        if fam == "natural-of-implication":
            return C.NaturalNegationOfImplication(
                self.implication(self._field(spec, "implication", where), f"{where}.implication")
            )
        if fam == "natural-of-aggregator":
            agg = self.aggregator(self._field(spec, "aggregator", where), f"{where}.aggregator")
            return self._build(where, C.NaturalNegationOfAggregator, agg, float(spec.get("tol", 1e-6)))
        if fam == "tabulated":
            return self._build(
                where, C.TabulatedNegation, tuple(self._field(spec, "x", where)), tuple(self._field(spec, "value", where))
            )
        raise SpecError(f"{where}: unknown negation family {fam!r}")

    def aggregator(self, spec, where: str = "$") -> C.Aggregator:
        hit = self._deref(spec, where, self.aggregator)
        if hit is not None:
            return hit
        spec = self._obj(spec, where)
        fam = spec["family"]
        if fam in SIMPLE_AGGREGATORS:
            return SIMPLE_AGGREGATORS[fam]()
        if fam == "wqam":
            g = self.generator(self._field(spec, "generator", where), f"{where}.generator")
            return self._build(where, C.WeightedQuasiArithmeticMean, float(self._field(spec, "lam", where)), g)
        if fam == "representable":
            g = self.generator(self._field(spec, "generator", where), f"{where}.generator")
            return self._build(where, C.Representable, g, bool(spec.get("conjunctive", True)))
        if fam == "ordinal-sum-tconorm":
            comps = []
            for k, c in enumerate(self._field(spec, "components", where)):
                at = f"{where}.components[{k}]"
                if not isinstance(c, dict):
                    raise SpecError(f"{at}: expected an object with lower, upper, generator")
                g = self.generator(self._field({"family": fam, **c}, "generator", at), f"{at}.generator")
                comps.append(
                    self._build(
                        at,
                        C.OrdinalComponent,
                        float(self._field({"family": fam, **c}, "lower", at)),
                        float(self._field({"family": fam, **c}, "upper", at)),
                        g,
                    )
                )
            return self._build(where, C.OrdinalSumTConorm, tuple(comps))
        if fam == "conjugated":
            base = self.aggregator(self._field(spec, "base", where), f"{where}.base")
            return C.ConjugatedAggregator(base, self.automorphism(self._field(spec, "phi", where), f"{where}.phi"))
        if fam == "dual":
            base = self.aggregator(self._field(spec, "base", where), f"{where}.base")
            return C.dual_aggregator(base, self.negation(self._field(spec, "negation", where), f"{where}.negation"))
        if fam == "scaled":
            base = self.aggregator(self._field(spec, "base", where), f"{where}.base")
            return self._build(where, C.ScaledAggregator, base, float(self._field(spec, "lam", where)))
        if fam == "from-implication":
            imp = self.implication(self._field(spec, "implication", where), f"{where}.implication")
            method = spec.get("method", "numeric-infimum")
            return self._build(where, K.build, imp, method, float(spec.get("tol", 1e-6)))
        if fam == "star-extension":
            base = self.aggregator(self._field(spec, "base", where), f"{where}.base")
            return self._build(where, K.star_extension, base, float(spec.get("step", 1e-3)))
        if fam == "tabulated":
            return self._build(
                where,
                C.TabulatedAggregator,
                tuple(self._field(spec, "x", where)),
                tuple(spec.get("y", spec["x"])),
                tuple(tuple(r) for r in self._field(spec, "value", where)),
            )
        raise SpecError(f"{where}: unknown aggregator family {fam!r}")

    def implication(self, spec, where: str = "$") -> I.Implication:
        hit = self._deref(spec, where, self.implication)
        if hit is not None:
            return hit
        spec = self._obj(spec, where)
        fam = spec["family"]
        sub = lambda key, parse: parse(self._field(spec, key, where), f"{where}.{key}")  # noqa: E731
        if fam in SIMPLE_IMPLICATIONS:
            return SIMPLE_IMPLICATIONS[fam]()
        if fam == "r-implication":
            return I.RImplication(sub("aggregator", self.aggregator))
        if fam == "an-implication":
            return self._build(where, I.AnImplication, sub("aggregator", self.aggregator), sub("negation", self.negation))
        if fam == "ql-operation":
            return self._build(
                where,
                I.QLOperation,
                sub("outer", self.aggregator),
                sub("inner", self.aggregator),
                sub("negation", self.negation),
            )
        if fam == "f-implication":
            g = self.generator(self._field(spec, "generator", where), f"{where}.generator", "f-generator")
            return I.FImplication(g)
        if fam == "g-implication":
            g = self.generator(self._field(spec, "generator", where), f"{where}.generator", "g-generator")
            return I.GImplication(g)
        if fam == "t-power":
            t = spec.get("t", "archimedean" if "generator" in spec else "min")
            if t == "min":
                return I.TPower()
            if t != "archimedean":
                raise SpecError(f"{where}.t: expected \"min\" or \"archimedean\", got {t!r}")
            return I.TPower(self.generator(self._field(spec, "generator", where), f"{where}.generator", "tnorm-additive"))
        if fam == "probabilistic":
            return self._build(where, I.Probabilistic, sub("copula", self.copula))
        if fam == "probabilistic-s":
            return self._build(where, I.ProbabilisticS, sub("copula", self.copula))
        if fam in ("meet", "join"):
            cls = I.Meet if fam == "meet" else I.Join
            return cls(sub("first", self.implication), sub("second", self.implication))
        if fam == "conjugated":
            return I.ConjugatedImplication(sub("base", self.implication), sub("phi", self.automorphism))
        if fam in ("contrapositivisation", "lower-contrapositivisation", "upper-contrapositivisation"):
            side = fam.split("-")[0] if fam != "contrapositivisation" else spec.get("side", "lower")
            if side not in ("lower", "upper"):
                raise SpecError(f"{where}.side: expected \"lower\" or \"upper\", got {side!r}")
            return self._build(
                where, I.contrapositivise, sub("base", self.implication), sub("negation", self.negation), side
            )
        if fam == "tabulated":
            return self._build(
                where,
                I.TabulatedImplication,
                tuple(self._field(spec, "x", where)),
                tuple(spec.get("y", spec["x"])),
                tuple(tuple(r) for r in self._field(spec, "value", where)),
            )
        raise SpecError(f"{where}: unknown implication family {fam!r}")

    # -- fuzzy sets -----------------------------------------------------
    def fuzzy_set(self, spec, where: str = "$") -> FuzzySet:
        if not isinstance(spec, dict):
            raise SpecError(f"{where}: expected a fuzzy set object")
        if "product" in spec:
            parts = spec["product"]
            if not isinstance(parts, list) or len(parts) != 2:
                raise SpecError(f"{where}.product: expected exactly two fuzzy sets")
            d1 = self.fuzzy_set(parts[0], f"{where}.product[0]")
            d2 = self.fuzzy_set(parts[1], f"{where}.product[1]")
            comb = self.aggregator(spec["combiner"], f"{where}.combiner") if "combiner" in spec else None
            return product_set(d1, d2, comb)
        if "memberships" not in spec:
            raise SpecError(f"{where}: missing \"memberships\"")
        return self._build(where, FuzzySet.of, spec["memberships"], spec.get("universe"))

    def rule(self, spec, where: str = "$") -> Rule:
        if not isinstance(spec, dict):
            raise SpecError(f"{where}: expected a rule object")
        return Rule(
            self.fuzzy_set(self._field({"family": "rule", **spec}, "antecedent", where), f"{where}.antecedent"),
            self.fuzzy_set(self._field({"family": "rule", **spec}, "consequent", where), f"{where}.consequent"),
        )


# ---------------------------------------------------------------------------


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from None
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None


def parse_negation(spec, operators=None) -> C.Negation:
    return Document(operators).negation(spec)


def parse_aggregator(spec, operators=None) -> C.Aggregator:
    return Document(operators).aggregator(spec)


def parse_implication(spec, operators=None) -> I.Implication:
    return Document(operators).implication(spec)


def parse_fuzzy_set(spec) -> FuzzySet:
    return Document().fuzzy_set(spec)


@dataclass(frozen=True)
class Scenario:
    name: str
    rule: Rule
    input: FuzzySet
    aggregator: C.Aggregator
    implication: I.Implication
    negation: C.Negation
    expected_output: FuzzySet | None = None
    tolerance: float = 1e-9


def parse_scenario(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise SpecError("$: a scenario must be a JSON object")
    d = Document(doc.get("operators"))
    conn = doc.get("connectives")
    if not isinstance(conn, dict):
        raise SpecError("$.connectives: expected an object with aggregator and implication")
    for key in ("rule", "input"):
        if key not in doc:
            raise SpecError(f"$: scenario needs field {key!r}")
    rule = d.rule(doc["rule"], "$.rule")
    given = d.fuzzy_set(doc["input"], "$.input")
    expected = d.fuzzy_set(doc["expected_output"], "$.expected_output") if doc.get("expected_output") else None
    tol = doc.get("tolerance", 1e-9)
    if not isinstance(tol, (int, float)) or tol < 0:
        raise SpecError("$.tolerance: expected a non-negative number")
    if "aggregator" not in conn or "implication" not in conn:
        raise SpecError("$.connectives: needs both \"aggregator\" and \"implication\"")
    return Scenario(
        name=str(doc.get("name", "scenario")),
        rule=rule,
        input=given,
        aggregator=d.aggregator(conn["aggregator"], "$.connectives.aggregator"),
        implication=d.implication(conn["implication"], "$.connectives.implication"),
        negation=d.negation(conn.get("negation", "standard"), "$.connectives.negation"),
        expected_output=expected,
        tolerance=float(tol),
    )


def load_scenario(path: str | Path) -> Scenario:
    doc = load_json(path)
    try:
        return parse_scenario(doc)
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from None
