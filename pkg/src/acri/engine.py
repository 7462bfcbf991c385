"""Fuzzy sets on finite universes and sup-composition inference."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .connectives import Aggregator, Minimum, Negation, unit
from .errors import SpecError, UniverseMismatch
from .implications import Implication


class NonNormalWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FuzzySet:
    universe: tuple[str, ...]
    memberships: tuple[float, ...]

    def __post_init__(self):
        universe = tuple(str(u) for u in self.universe)
        memberships = tuple(unit(m, "membership") for m in self.memberships)
        if not universe or len(universe) != len(memberships):
            raise SpecError("a fuzzy set needs equally long, non-empty universe and membership lists")
        if len(set(universe)) != len(universe):
            dup = next(u for u in universe if universe.count(u) > 1)
            raise SpecError(f"duplicate universe label {dup!r}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "memberships", memberships)

    @classmethod
    def of(cls, memberships, universe=None, prefix: str = "x") -> "FuzzySet":
        memberships = tuple(memberships)
        if universe is None:
            universe = tuple(f"{prefix}{k + 1}" for k in range(len(memberships)))
        return cls(tuple(universe), memberships)

    def __len__(self):
        return len(self.universe)

    def __getitem__(self, label: str) -> float:
        return self.memberships[self.universe.index(label)]

    @property
    def is_normal(self) -> bool:
        return any(m == 1.0 for m in self.memberships)

    def map(self, fn) -> "FuzzySet":
        return FuzzySet(self.universe, tuple(fn(m) for m in self.memberships))

    def issubset(self, other: "FuzzySet", tol: float = 0.0) -> bool:
        require_same_universe(self, other)
        return all(a <= b + tol for a, b in zip(self.memberships, other.memberships))

    def to_dict(self) -> dict:
        return {"universe": list(self.universe), "memberships": list(self.memberships)}


@dataclass(frozen=True)
class Rule:
    antecedent: FuzzySet
    consequent: FuzzySet

    def to_dict(self) -> dict:
        return {"antecedent": self.antecedent.to_dict(), "consequent": self.consequent.to_dict()}


def require_same_universe(a: FuzzySet, b: FuzzySet) -> None:
    if a.universe == b.universe:
        return
    only_a = [u for u in a.universe if u not in b.universe]
    only_b = [u for u in b.universe if u not in a.universe]
    if not only_a and not only_b:
        raise UniverseMismatch(f"universes hold the same labels in a different order: {a.universe} vs {b.universe}")
    raise UniverseMismatch(f"universes differ: only in first {only_a}, only in second {only_b}")


def _warn_non_normal(**sets: FuzzySet) -> None:
    for name, s in sets.items():
        if not s.is_normal:
            warnings.warn(f"{name} is not a normal fuzzy set", NonNormalWarning, stacklevel=3)


def fmp_infer(a: Aggregator, i: Implication, rule: Rule, given: FuzzySet) -> FuzzySet:
    """``B'(y) = max_x A(D'(x), I(D(x), B(y)))``."""
    d, b = rule.antecedent, rule.consequent
    require_same_universe(given, d)
    _warn_non_normal(input=given, antecedent=d)
    out = []
    for by in b.memberships:
        out.append(max(a(dp, i(dx, by)) for dp, dx in zip(given.memberships, d.memberships)))
    return FuzzySet(b.universe, tuple(out))


def fmt_infer(a: Aggregator, i: Implication, rule: Rule, given: FuzzySet) -> FuzzySet:
    """``D'(x) = max_y A(B'(y), I(D(x), B(y)))``."""
    d, b = rule.antecedent, rule.consequent
    require_same_universe(given, b)
    _warn_non_normal(input=given, consequent=b)
    out = []
    for dx in d.memberships:
        out.append(max(a(bp, i(dx, by)) for bp, by in zip(given.memberships, b.memberships)))
    return FuzzySet(d.universe, tuple(out))


def product_set(d1: FuzzySet, d2: FuzzySet, combiner: Aggregator | None = None) -> FuzzySet:
    """Cartesian product in row-major order; labels are joined as ``"u|v"``."""
    combiner = combiner or Minimum()
    universe, memberships = [], []
    for u, mu in zip(d1.universe, d1.memberships):
        for v, mv in zip(d2.universe, d2.memberships):
            universe.append(f"{u}|{v}")
            memberships.append(combiner(mu, mv))
    return FuzzySet(tuple(universe), tuple(memberships))


def distance(d1: FuzzySet, d2: FuzzySet, p: float = 2.0) -> float:
    if p < 1:
        raise SpecError(f"distance exponent must be >= 1, got {p}")
    require_same_universe(d1, d2)
    diffs = [abs(a - b) for a, b in zip(d1.memberships, d2.memberships)]
    if math.isinf(p):
        return max(diffs)
    return math.fsum(t ** p for t in diffs) ** (1.0 / p)


def complement(d: FuzzySet, n: Negation) -> FuzzySet:
    return d.map(n)
