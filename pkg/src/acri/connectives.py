"""Fuzzy negations and binary aggregation functions on [0,1].

Operators are small frozen dataclasses that evaluate with ``op(x)`` or
``op(x, y)``. Every family carries a ``family`` tag matching its JSON form
(see :mod:`acri.specio`).
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable

from .errors import SpecError
from .generators import Automorphism, Generator, interpolate
from .grid import DEFAULT_GRID, Grid

if TYPE_CHECKING:
    from .implications import Implication

# values this close to a target are treated as equal to it (float noise only)
EPS = 1e-12


def unit(x: float, what: str = "value") -> float:
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise SpecError(f"{what} {x} is outside [0, 1]")
    return x


# ---------------------------------------------------------------------------
# negations


class Negation:
    family: str = ""
    exact = True

    def __call__(self, x: float) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family}


@dataclass(frozen=True)
class BottomNegation(Negation):
    family = "bottom"

    def __call__(self, x):
        return 1.0 if x == 0.0 else 0.0


@dataclass(frozen=True)
class TopNegation(Negation):
    family = "top"

    def __call__(self, x):
        return 0.0 if x == 1.0 else 1.0


@dataclass(frozen=True)
class StandardNegation(Negation):
    family = "standard"

    def __call__(self, x):
        return 1.0 - x


@dataclass(frozen=True)
class ConjugatedNegation(Negation):
    base: Negation
    phi: Automorphism
    family = "conjugated"

    @property
    def exact(self):
        return self.base.exact

    def __call__(self, x):
        return self.phi.inverse(self.base(self.phi(x)))

    def to_dict(self):
        return {"family": self.family, "base": self.base.to_dict(), "phi": self.phi.to_dict()}


@dataclass(frozen=True)
class NaturalNegationOfImplication(Negation):
    implication: "Implication"
    family = "natural-of-implication"

    @property
    def exact(self):
        return self.implication.exact

    def __call__(self, x):
        return self.implication(x, 0.0)

    def to_dict(self):
        return {"family": self.family, "implication": self.implication.to_dict()}


@functools.lru_cache(maxsize=65536)
def _aggregator_zero_sup(a: "Aggregator", x: float, tol: float, confirm: bool) -> float:
    def is_zero(t: float) -> bool:
        return a(t, x) <= EPS

    if not is_zero(0.0):
        return 0.0
    if is_zero(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if is_zero(mid):
            lo = mid
        else:
            hi = mid
    if confirm:
        step = 1e-4
        scan = max(k * step for k in range(10001) if is_zero(k * step))
        if abs(scan - lo) > step + tol:
            warnings.warn(
                f"natural negation of {a.family} at {x}: bisection gave {lo}, dense scan {scan}; "
                "the aggregator is probably not monotone",
                stacklevel=3,
            )
    return lo


@dataclass(frozen=True)
class NaturalNegationOfAggregator(Negation):
    """``x -> sup{t : A(t, x) = 0}``, by bisection plus a 1e-4 confirmation scan."""

    aggregator: "Aggregator"
    tol: float = 1e-6
    confirm: bool = True
    family = "natural-of-aggregator"
    exact = False

    def __call__(self, x):
        return _aggregator_zero_sup(self.aggregator, float(x), self.tol, self.confirm)

    def to_dict(self):
        return {"family": self.family, "aggregator": self.aggregator.to_dict(), "tol": self.tol}


@dataclass(frozen=True)
class TabulatedNegation(Negation):
    x: tuple[float, ...]
    value: tuple[float, ...]
    family = "tabulated"

    def __post_init__(self):
        if len(self.x) != len(self.value) or len(self.x) < 2:
            raise SpecError("tabulated negation needs parallel x/value arrays of length >= 2")
        if self.x[0] != 0.0 or self.x[-1] != 1.0:
            raise SpecError("tabulated negation samples must start at 0 and end at 1")
        if any(b <= a for a, b in zip(self.x, self.x[1:])):
            raise SpecError("tabulated negation x samples must be strictly increasing")
        if any(b > a for a, b in zip(self.value, self.value[1:])):
            raise SpecError("tabulated negation values must be non-increasing")
        if self.value[0] != 1.0 or self.value[-1] != 0.0:
            raise SpecError("tabulated negation must satisfy N(0)=1 and N(1)=0")
        for v in self.value:
            unit(v, "tabulated negation value")

    def __call__(self, x):
        return interpolate(self.x, self.value, x)

    def to_dict(self):
        return {"family": self.family, "x": list(self.x), "value": list(self.value)}


def eval_negation(n: Negation, x: float) -> float:
    return n(unit(x))


def is_strong(n: Negation, grid: Grid = DEFAULT_GRID, tol: float = 1e-9) -> bool:
    return all(abs(n(n(x)) - x) <= tol for x in grid)


# ---------------------------------------------------------------------------
# aggregation functions


class Aggregator:
    family: str = ""
    exact = True

    def __call__(self, x: float, y: float) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family}


@dataclass(frozen=True)
class Minimum(Aggregator):
    family = "min"

    def __call__(self, x, y):
        return x if x < y else y


@dataclass(frozen=True)
class Product(Aggregator):
    family = "product"

    def __call__(self, x, y):
        return x * y


@dataclass(frozen=True)
class LukasiewiczTNorm(Aggregator):
    family = "lukasiewicz-tnorm"

    def __call__(self, x, y):
        return max(x + y - 1.0, 0.0)


@dataclass(frozen=True)
class Maximum(Aggregator):
    family = "max"

    def __call__(self, x, y):
        return x if x > y else y


@dataclass(frozen=True)
class ProbabilisticSum(Aggregator):
    family = "probabilistic-sum"

    def __call__(self, x, y):
        # this form rounds monotonically, x + y - xy does not
        return 1.0 - (1.0 - x) * (1.0 - y)


@dataclass(frozen=True)
class LukasiewiczTConorm(Aggregator):
    family = "lukasiewicz-tconorm"

    def __call__(self, x, y):
        return min(x + y, 1.0)


@dataclass(frozen=True)
class GreatestDisjunctor(Aggregator):
    family = "greatest-disjunctor"

    def __call__(self, x, y):
        return 0.0 if x == 0.0 and y == 0.0 else 1.0


@dataclass(frozen=True)
class SmallestDisjunctor(Aggregator):
    family = "smallest-disjunctor"

    def __call__(self, x, y):
        return 1.0 if x == 1.0 or y == 1.0 else 0.0


@dataclass(frozen=True)
class WeightedQuasiArithmeticMean(Aggregator):
    """``f^-1((1-lam) f(x) + lam f(y))``; an undefined ``inf - inf`` resolves to 0."""

    lam: float
    generator: Generator
    family = "wqam"

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise SpecError(f"wqam weight must lie in (0, 1), got {self.lam}")

    def __call__(self, x, y):
        f = self.generator
        s = (1.0 - self.lam) * f(x) + self.lam * f(y)
        if math.isnan(s):
            return 0.0
        return f.inverse(s)

    def to_dict(self):
        return {"family": self.family, "lam": self.lam, "generator": self.generator.to_dict()}


@dataclass(frozen=True)
class Representable(Aggregator):
    """``g^(-1)(g(x) + g(y))`` with neutral element ``e = g^-1(0)``.

    ``conjunctive`` fixes the value where ``g(x) + g(y)`` is ``inf - inf``.
    """

    generator: Generator
    conjunctive: bool = True
    family = "representable"

    def __post_init__(self):
        g = self.generator
        if not math.isinf(g.at_one):
            raise SpecError("representable aggregator needs g(1) = +-inf")
        e = self.neutral
        if not 0.0 < e < 1.0 or abs(g(e)) > 1e-9:
            raise SpecError("representable aggregator needs g(e) = 0 for some e in (0, 1)")

    @property
    def neutral(self) -> float:
        g = self.generator
        # sign change of g locates e; inverse() is exact on the range
        return g.inverse(0.0)

    def __call__(self, x, y):
        g = self.generator
        s = g(x) + g(y)
        if math.isnan(s):
            return 0.0 if self.conjunctive else 1.0
        return g.inverse(s)

    def to_dict(self):
        return {"family": self.family, "generator": self.generator.to_dict(), "conjunctive": self.conjunctive}


@dataclass(frozen=True)
class OrdinalComponent:
    lower: float
    upper: float
    generator: Generator

    def __post_init__(self):
        if not 0.0 <= self.lower < self.upper <= 1.0:
            raise SpecError(f"ordinal-sum component [{self.lower}, {self.upper}] is not a sub-interval of [0, 1]")
        if self.generator.kind != "tconorm-additive":
            object.__setattr__(
                self, "generator", Generator(self.generator.name, self.generator.params, "tconorm-additive")
            )

    def contains(self, v: float) -> bool:
        return self.lower <= v <= self.upper

    def scale(self, v: float) -> float:
        return (v - self.lower) / (self.upper - self.lower)

    def unscale(self, v: float) -> float:
        return self.lower + (self.upper - self.lower) * v

    def summand(self, u: float, v: float) -> float:
        f = self.generator
        return f.inverse(f(u) + f(v))


@dataclass(frozen=True)
class OrdinalSumTConorm(Aggregator):
    """Continuous t-conorm built from Archimedean summands on disjoint intervals."""

    components: tuple[OrdinalComponent, ...]
    family = "ordinal-sum-tconorm"

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda c: c.lower))
        for left, right in zip(comps, comps[1:]):
            if right.lower < left.upper:
                raise SpecError(
                    f"ordinal-sum components [{left.lower}, {left.upper}] and "
                    f"[{right.lower}, {right.upper}] overlap"
                )
        object.__setattr__(self, "components", comps)

    def __call__(self, x, y):
        for c in self.components:
            if c.contains(x) and c.contains(y):
                return c.unscale(c.summand(c.scale(x), c.scale(y)))
        return x if x > y else y

    def to_dict(self):
        return {
            "family": self.family,
            "components": [
                {"lower": c.lower, "upper": c.upper, "generator": c.generator.to_dict()} for c in self.components
            ],
        }


@dataclass(frozen=True)
class ConjugatedAggregator(Aggregator):
    base: Aggregator
    phi: Automorphism
    family = "conjugated"

    @property
    def exact(self):
        return self.base.exact

    def __call__(self, x, y):
        phi = self.phi
        return phi.inverse(self.base(phi(x), phi(y)))

    def to_dict(self):
        return {"family": self.family, "base": self.base.to_dict(), "phi": self.phi.to_dict()}


@dataclass(frozen=True)
class DualAggregator(Aggregator):
    base: Aggregator
    negation: Negation
    family = "dual"

    def __post_init__(self):
        if not is_strong(self.negation, DEFAULT_GRID.coarsen(21)):
            warnings.warn("dual aggregator built with a negation that is not strong on the check grid", stacklevel=3)

    @property
    def exact(self):
        return self.base.exact and self.negation.exact

    def __call__(self, x, y):
        n = self.negation
        return n(self.base(n(x), n(y)))

    def to_dict(self):
        return {"family": self.family, "base": self.base.to_dict(), "negation": self.negation.to_dict()}


@dataclass(frozen=True)
class ScaledAggregator(Aggregator):
    """``lam * A`` off the corner; the corner keeps ``A(1, 1) = 1`` so the result stays an aggregator."""

    base: Aggregator
    lam: float
    family = "scaled"

    def __post_init__(self):
        if not 0.0 < self.lam <= 1.0:
            raise SpecError(f"scale factor must lie in (0, 1], got {self.lam}")

    @property
    def exact(self):
        return self.base.exact

    def __call__(self, x, y):
        if x == 1.0 and y == 1.0:
            return 1.0
        return self.lam * self.base(x, y)

    def to_dict(self):
        return {"family": self.family, "base": self.base.to_dict(), "lam": self.lam}


def bilinear(xs, ys, table, x: float, y: float) -> float:
    import bisect

    i = min(max(bisect.bisect_right(xs, x) - 1, 0), len(xs) - 2)
    j = min(max(bisect.bisect_right(ys, y) - 1, 0), len(ys) - 2)
    tx = (x - xs[i]) / (xs[i + 1] - xs[i])
    ty = (y - ys[j]) / (ys[j + 1] - ys[j])
    v00, v01 = table[i][j], table[i][j + 1]
    v10, v11 = table[i + 1][j], table[i + 1][j + 1]
    return (1 - tx) * ((1 - ty) * v00 + ty * v01) + tx * ((1 - ty) * v10 + ty * v11)


def _check_table(xs, ys, table, what: str) -> None:
    for axis in (xs, ys):
        if len(axis) < 2 or axis[0] != 0.0 or axis[-1] != 1.0:
            raise SpecError(f"{what} axes must start at 0 and end at 1")
        if any(b <= a for a, b in zip(axis, axis[1:])):
            raise SpecError(f"{what} axes must be strictly increasing")
    if len(table) != len(xs) or any(len(row) != len(ys) for row in table):
        raise SpecError(f"{what} value table must have shape len(x) by len(y)")
    for row in table:
        for v in row:
            unit(v, f"{what} value")


@dataclass(frozen=True)
class TabulatedAggregator(Aggregator):
    """Samples ``value[i][j] = A(x[i], y[j])`` joined by bilinear interpolation."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    value: tuple[tuple[float, ...], ...]
    family = "tabulated"

    def __post_init__(self):
        _check_table(self.x, self.y, self.value, "tabulated aggregator")
        t = self.value
        if t[0][0] != 0.0 or t[-1][-1] != 1.0:
            raise SpecError("tabulated aggregator must satisfy A(0,0)=0 and A(1,1)=1")
        for i in range(len(self.x)):
            for j in range(len(self.y)):
                if (i and t[i][j] < t[i - 1][j]) or (j and t[i][j] < t[i][j - 1]):
                    raise SpecError("tabulated aggregator samples must be non-decreasing in each argument")

    def __call__(self, x, y):
        return bilinear(self.x, self.y, self.value, x, y)

    def to_dict(self):
        return {"family": self.family, "x": list(self.x), "y": list(self.y), "value": [list(r) for r in self.value]}


@dataclass(frozen=True)
class FunctionAggregator(Aggregator):
    """Wraps a Python callable; for fixtures and programmatic use, not serializable."""

    fn: Callable[[float, float], float]
    name: str = "function"
    is_exact: bool = True
    family = "function"

    @property
    def exact(self):
        return self.is_exact

    def __call__(self, x, y):
        return self.fn(x, y)

    def to_dict(self):
        raise SpecError(f"function aggregator {self.name!r} has no JSON form")


def eval_aggregator(a: Aggregator, x: float, y: float) -> float:
    return a(unit(x), unit(y))


def conjugate_aggregator(a: Aggregator, phi: Automorphism) -> Aggregator:
    return ConjugatedAggregator(a, phi)


def dual_aggregator(a: Aggregator, n: Negation) -> Aggregator:
    return DualAggregator(a, n)


# ---------------------------------------------------------------------------
# classification


@dataclass
class AggregatorProfile:
    grid: str
    is_conjunctor: bool
    is_disjunctor: bool
    left_neutral_one: bool
    right_neutral_one: bool
    commutative_on_grid: bool
    has_zero_divisors: bool
    has_one_divisors: bool
    satisfies_lnc: bool
    satisfies_lem: bool
    monotone_on_grid: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)


def _worst(items, key):
    best, best_val = None, 0.0
    for item in items:
        v = key(item)
        if v > best_val:
            best, best_val = item, v
    return best


def profile_aggregator(a: Aggregator, n: Negation, grid: Grid = DEFAULT_GRID) -> AggregatorProfile:
    """Classify ``a`` by exhaustive scan of ``grid``.

    Universal flags are only grid-sound. Failed universal flags record the
    worst grid violation as witness; true existential flags (zero/one
    divisors) record the most interior witness found.
    """
    pts = grid.points
    table = {(x, y): a(x, y) for x in pts for y in pts}
    w: dict[str, tuple] = {}

    def universal(name, items, defect):
        bad = _worst(items, defect)
        if bad is not None and defect(bad) > EPS:
            w[name] = bad if isinstance(bad, tuple) else (bad,)
            return False
        return True

    left = universal("left_neutral_one", pts, lambda x: abs(table[1.0, x] - x))
    right = universal("right_neutral_one", pts, lambda x: abs(table[x, 1.0] - x))
    comm = universal("commutative_on_grid", list(table), lambda p: abs(table[p] - table[p[1], p[0]]))
    lnc = universal("satisfies_lnc", pts, lambda x: max(a(n(x), x), a(x, n(x))))
    lem = universal("satisfies_lem", pts, lambda x: max(1.0 - a(n(x), x), 1.0 - a(x, n(x))))

    mono = True
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            if i and table[x, y] < table[pts[i - 1], y] - EPS:
                w.setdefault("monotone_on_grid", (pts[i - 1], x, y))
                mono = False
            if j and table[x, y] < table[x, pts[j - 1]] - EPS:
                w.setdefault("monotone_on_grid", (x, pts[j - 1], y))
                mono = False

    zeros = [(x, y) for (x, y), v in table.items() if x > 0 and y > 0 and v <= EPS]
    ones = [(x, y) for (x, y), v in table.items() if x < 1 and y < 1 and v >= 1.0 - EPS]
    if zeros:
        w["has_zero_divisors"] = max(zeros, key=lambda p: (min(p), -abs(p[0] - p[1])))
    if ones:
        w["has_one_divisors"] = min(ones, key=lambda p: (max(p), abs(p[0] - p[1])))

    return AggregatorProfile(
        grid=grid.describe(),
        is_conjunctor=table[1.0, 0.0] == 0.0 and table[0.0, 1.0] == 0.0,
        is_disjunctor=table[1.0, 0.0] == 1.0 and table[0.0, 1.0] == 1.0,
        left_neutral_one=left,
        right_neutral_one=right,
        commutative_on_grid=comm,
        has_zero_divisors=bool(zeros),
        has_one_divisors=bool(ones),
        satisfies_lnc=lnc,
        satisfies_lem=lem,
        monotone_on_grid=mono,
        witnesses=w,
    )


def is_aggregator_on_grid(a: Aggregator, grid: Grid = DEFAULT_GRID) -> bool:
    """Boundary conditions plus monotonicity, checked on ``grid``."""
    if abs(a(0.0, 0.0)) > EPS or abs(a(1.0, 1.0) - 1.0) > EPS:
        return False
    pts = grid.points
    prev_row = None
    for x in pts:
        row = [a(x, y) for y in pts]
        if any(v < -EPS or v > 1 + EPS for v in row):
            return False
        if any(b < c - EPS for c, b in zip(row, row[1:])):
            return False
        if prev_row and any(b < c - EPS for c, b in zip(prev_row, row)):
            return False
        prev_row = row
    return True


BUILTIN_CONJUNCTORS: dict[str, Aggregator] = {
    "min": Minimum(),
    "product": Product(),
    "lukasiewicz-tnorm": LukasiewiczTNorm(),
}


def builtin_aggregators() -> dict[str, Aggregator]:
    """One representative of every parameter-free or default-parameter family."""
    from .generators import Generator as G, PowerAutomorphism

    return {
        **BUILTIN_CONJUNCTORS,
        "max": Maximum(),
        "probabilistic-sum": ProbabilisticSum(),
        "lukasiewicz-tconorm": LukasiewiczTConorm(),
        "greatest-disjunctor": GreatestDisjunctor(),
        "smallest-disjunctor": SmallestDisjunctor(),
        "wqam": WeightedQuasiArithmeticMean(0.3, G.of("neg-log")),
        "representable": Representable(G.of("logit")),
        "ordinal-sum-tconorm": OrdinalSumTConorm(
            (
                OrdinalComponent(0.0, 0.4, G.of("identity")),
                OrdinalComponent(0.6, 1.0, G.of("neg-log-complement")),
            )
        ),
        "conjugated": ConjugatedAggregator(LukasiewiczTNorm(), PowerAutomorphism(2.0)),
        "dual": DualAggregator(Product(), StandardNegation()),
        "scaled": ScaledAggregator(Minimum(), 0.5),
    }
