"""Rule-based classification of two-attribute entities by per-rule FMP.

Each rule ``IF a1 is P AND a2 is Q THEN c`` becomes a single-antecedent rule
on the product of the two discretised attribute universes, with a crisp
consequent on the class set. A rule's firing strength is
``1 - max_{y != c} B'(y)``, which for a singleton input is just the
antecedent membership at the reading. Class scores take the max over rules
and the top class wins; ties go to the earlier class in the configured order.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from .engine import FuzzySet, NonNormalWarning, Rule, fmp_infer, product_set
from .errors import SpecError
from .specio import Document

Membership = Callable[[float], float]


def _num(v) -> float:
    return float(v)  # accepts "inf" / "-inf" from JSON


def trapezoid(a: float, b: float, c: float, d: float) -> Membership:
    if not a <= b <= c <= d:
        raise SpecError(f"trapezoid breakpoints must be ordered, got {(a, b, c, d)}")

    def mu(x: float) -> float:
        if b <= x <= c:
            return 1.0
        if x <= a or x >= d:
            return 0.0
        return (x - a) / (b - a) if x < b else (d - x) / (d - c)

    return mu


def triangle(a: float, b: float, c: float) -> Membership:
    return trapezoid(a, b, b, c)


SHAPES = {"trapezoid": (trapezoid, 4), "triangle": (triangle, 3)}


@dataclass(frozen=True)
class Attribute:
    name: str
    lo: float
    hi: float
    points: int
    terms: dict[str, Membership] = field(compare=False)

    @property
    def grid(self) -> list[float]:
        return [self.lo + (self.hi - self.lo) * k / (self.points - 1) for k in range(self.points)]

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.points - 1)

    def labels(self, tag: str) -> list[str]:
        return [f"{tag}={v:g}" for v in self.grid]

    def term_set(self, term: str, tag: str) -> FuzzySet:
        mu = self.terms[term]
        return FuzzySet(tuple(self.labels(tag)), tuple(mu(v) for v in self.grid))

    def fuzzify(self, x: float, tag: str) -> FuzzySet:
        """Triangular fuzzifier with half-width of one grid step."""
        if not self.lo <= x <= self.hi:
            raise SpecError(f"{self.name} reading {x} is outside [{self.lo:g}, {self.hi:g}]")
        h = self.step
        return FuzzySet(tuple(self.labels(tag)), tuple(max(0.0, 1.0 - abs(v - x) / h) for v in self.grid))


@dataclass(frozen=True)
class Classifier:
    classes: tuple[str, ...]
    attributes: tuple[Attribute, Attribute]
    rules: tuple[tuple[tuple[str, str], str], ...]
    document: dict = field(compare=False, repr=False)

    def classify(self, x1: float, x2: float) -> dict:
        d = Document(self.document.get("operators"))
        conn = self.document.get("connectives", {})
        a = d.aggregator(conn.get("aggregator", "lukasiewicz-tnorm"), "$.connectives.aggregator")
        i = d.implication(conn.get("implication", "lukasiewicz"), "$.connectives.implication")
        at1, at2 = self.attributes
        given = product_set(at1.fuzzify(x1, "a1"), at2.fuzzify(x2, "a2"))
        trace, scores = [], {c: 0.0 for c in self.classes}
        with warnings.catch_warnings():
            # the sampled fuzzifier is usually not normal off-grid; expected here
            warnings.simplefilter("ignore", NonNormalWarning)
            for (t1, t2), cls in self.rules:
                ante = product_set(at1.term_set(t1, "a1"), at2.term_set(t2, "a2"))
                cons = FuzzySet(self.classes, tuple(1.0 if c == cls else 0.0 for c in self.classes))
                out = fmp_infer(a, i, Rule(ante, cons), given)
                strength = 1.0 - max((out[c] for c in self.classes if c != cls), default=0.0)
                scores[cls] = max(scores[cls], strength)
                trace.append(
                    {
                        "rule": f"IF {at1.name} is {t1} AND {at2.name} is {t2} THEN {cls}",
                        "output": {c: round(out[c], 6) for c in self.classes},
                        "strength": round(strength, 6),
                    }
                )
        best = max(scores.values())
        tied = [c for c in self.classes if math.isclose(scores[c], best, abs_tol=1e-12)]
        return {
            "entity": [x1, x2],
            "class": tied[0],
            "scores": {c: round(s, 6) for c, s in scores.items()},
            "tie": tied if len(tied) > 1 else [],
            "rules": trace,
        }


def _attribute(spec: dict, k: int) -> Attribute:
    where = f"$.attributes[{k}]"
    try:
        lo, hi = (float(v) for v in spec["range"])
        points = int(spec.get("points", 21))
        terms = {}
        for term, t in spec["terms"].items():
            shape, arity = SHAPES[t["shape"]]
            params = [_num(p) for p in t["params"]]
            if len(params) != arity:
                raise SpecError(f"{where}.terms.{term}: {t['shape']} takes {arity} parameters")
            terms[term] = shape(*params)
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecError(f"{where}: malformed attribute ({exc})") from None
    if points < 2 or not lo < hi:
        raise SpecError(f"{where}: need lo < hi and at least two points")
    return Attribute(str(spec.get("name", f"attribute {k + 1}")), lo, hi, points, terms)


def load_classifier(doc: dict | None = None) -> Classifier:
    """Build from a config document; the bundled demo config when ``doc`` is None."""
    if doc is None:
        doc = json.loads(resources.files("acri.data").joinpath("classify-demo.json").read_text("utf-8"))
    attrs = doc.get("attributes", [])
    if len(attrs) != 2:
        raise SpecError("$.attributes: exactly two attributes are supported")
    a1, a2 = (_attribute(s, k) for k, s in enumerate(attrs))
    classes = tuple(doc.get("classes", ("Y", "M", "N")))
    rules = []
    for k, r in enumerate(doc.get("rules", [])):
        try:
            t1, t2 = r["if"]
            cls = r["then"]
        except (KeyError, TypeError, ValueError):
            raise SpecError(f"$.rules[{k}]: expected {{\"if\": [term1, term2], \"then\": class}}") from None
        if t1 not in a1.terms or t2 not in a2.terms or cls not in classes:
            raise SpecError(f"$.rules[{k}]: unknown term or class in {r}")
        rules.append(((t1, t2), cls))
    if not rules:
        raise SpecError("$.rules: at least one rule is required")
    return Classifier(classes, (a1, a2), tuple(rules), doc)


def classify(x1: float, x2: float, doc: dict | None = None) -> dict:
    return load_classifier(doc).classify(x1, x2)
