"""Fuzzy implication families, copulas, and implication algebra."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Literal

from .connectives import (
    EPS,
    Aggregator,
    Negation,
    NaturalNegationOfImplication,
    _check_table,
    bilinear,
    is_strong,
    unit,
)
from .errors import SpecError
from .generators import Automorphism, Generator
from .grid import DEFAULT_GRID, Grid

# ---------------------------------------------------------------------------
# copulas


class Copula:
    family: str = ""

    def __call__(self, x: float, y: float) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family}

    @property
    def generator(self) -> Generator | None:
        """Additive generator when the copula is Archimedean."""
        return None


@dataclass(frozen=True)
class ProductCopula(Copula):
    family = "product"

    def __call__(self, x, y):
        return x * y

    @property
    def generator(self):
        return Generator.of("neg-log", "copula-additive")


@dataclass(frozen=True)
class LukasiewiczCopula(Copula):
    family = "lukasiewicz"

    def __call__(self, x, y):
        return max(x + y - 1.0, 0.0)

    @property
    def generator(self):
        return Generator.of("one-minus", "copula-additive")


def check_copula(c: Copula, grid: Grid = DEFAULT_GRID) -> None:
    """Raise SpecError unless ``c`` is grounded, has neutral 1 and is 2-increasing on ``grid``."""
    pts = grid.points
    for x in pts:
        if abs(c(x, 0.0)) > 1e-9 or abs(c(0.0, x)) > 1e-9:
            raise SpecError(f"{c.family} copula is not grounded at {x}")
        if abs(c(x, 1.0) - x) > 1e-9 or abs(c(1.0, x) - x) > 1e-9:
            raise SpecError(f"{c.family} copula does not have neutral element 1 at {x}")
    table = [[c(x, y) for y in pts] for x in pts]
    for i in range(len(pts) - 1):
        for j in range(len(pts) - 1):
            vol = table[i + 1][j + 1] - table[i + 1][j] - table[i][j + 1] + table[i][j]
            if vol < -1e-9:
                raise SpecError(
                    f"{c.family} copula is not 2-increasing on [{pts[i]}, {pts[i + 1]}] x [{pts[j]}, {pts[j + 1]}]"
                )


@dataclass(frozen=True)
class ArchimedeanCopula(Copula):
    additive: Generator
    family = "archimedean"

    def __post_init__(self):
        g = self.additive
        if g.kind != "copula-additive":
            object.__setattr__(self, "additive", Generator(g.name, g.params, "copula-additive"))
        check_copula(self)

    def __call__(self, x, y):
        c = self.additive
        return c.inverse(c(x) + c(y))

    @property
    def generator(self):
        return self.additive

    def to_dict(self):
        return {"family": self.family, "generator": self.additive.to_dict()}


# ---------------------------------------------------------------------------
# implications


class Implication:
    family: str = ""
    exact = True

    def __call__(self, x: float, y: float) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"family": self.family}


def _clip(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


@dataclass(frozen=True)
class Lukasiewicz(Implication):
    family = "lukasiewicz"

    def __call__(self, x, y):
        return min(1.0 - x + y, 1.0)


@dataclass(frozen=True)
class Reichenbach(Implication):
    family = "reichenbach"

    def __call__(self, x, y):
        return 1.0 - x + x * y


@dataclass(frozen=True)
class RImplication(Implication):
    """Residual ``sup{t : A(x, t) <= y}``, bisected over t."""

    aggregator: Aggregator
    iterations: int = 60
    family = "r-implication"
    exact = False

    def __call__(self, x, y):
        a = self.aggregator
        if a(x, 1.0) <= y + EPS:
            return 1.0
        if a(x, 0.0) > y + EPS:
            return 0.0
        lo, hi = 0.0, 1.0
        for _ in range(self.iterations):
            mid = 0.5 * (lo + hi)
            if a(x, mid) <= y:
                lo = mid
            else:
                hi = mid
        # sup pinned at 0 up to the bracket width: report it exactly, so (I5) holds
        return 0.0 if lo == 0.0 else hi

    def to_dict(self):
        return {"family": self.family, "aggregator": self.aggregator.to_dict()}


@dataclass(frozen=True)
class AnImplication(Implication):
    """``A(N(x), y)`` for a disjunctor A."""

    aggregator: Aggregator
    negation: Negation
    family = "an-implication"

    def __post_init__(self):
        a = self.aggregator
        if a(1.0, 0.0) != 1.0 or a(0.0, 1.0) != 1.0:
            raise SpecError(f"an-implication needs a disjunctor; {a.family} is not one")

    @property
    def exact(self):
        return self.aggregator.exact and self.negation.exact

    def __call__(self, x, y):
        return self.aggregator(self.negation(x), y)

    def to_dict(self):
        return {"family": self.family, "aggregator": self.aggregator.to_dict(), "negation": self.negation.to_dict()}


@dataclass(frozen=True)
class QLOperation(Implication):
    """``A1(N(x), A2(x, y))``; construction requires (I1) and (I3)-(I5) on the 101-grid."""

    outer: Aggregator
    inner: Aggregator
    negation: Negation
    family = "ql-operation"

    def __post_init__(self):
        failed = [k for k, ok in implication_axioms(self, DEFAULT_GRID).items() if not ok and k != "I2"]
        if failed:
            raise SpecError(f"QL-operation is not a fuzzy implication on the grid: fails {', '.join(failed)}")

    @property
    def exact(self):
        return self.outer.exact and self.inner.exact and self.negation.exact

    def __call__(self, x, y):
        return self.outer(self.negation(x), self.inner(x, y))

    def to_dict(self):
        return {
            "family": self.family,
            "outer": self.outer.to_dict(),
            "inner": self.inner.to_dict(),
            "negation": self.negation.to_dict(),
        }


@dataclass(frozen=True)
class FImplication(Implication):
    """``f^-1(x f(y))`` with ``0 * inf = 0``."""

    generator: Generator
    family = "f-implication"

    def __post_init__(self):
        g = self.generator
        if g.kind != "f-generator":
            object.__setattr__(self, "generator", Generator(g.name, g.params, "f-generator"))

    def __call__(self, x, y):
        f = self.generator
        fy = f(y)
        prod = 0.0 if x == 0.0 else x * fy
        return f.inverse(prod)

    def to_dict(self):
        return {"family": self.family, "generator": self.generator.to_dict()}


@dataclass(frozen=True)
class GImplication(Implication):
    """``g^(-1)(g(y) / x)`` with ``0 * inf = inf``."""

    generator: Generator
    family = "g-implication"

    def __post_init__(self):
        g = self.generator
        if g.kind != "g-generator":
            object.__setattr__(self, "generator", Generator(g.name, g.params, "g-generator"))

    def __call__(self, x, y):
        g = self.generator
        if x == 0.0:
            return 1.0
        return g.inverse(g(y) / x)

    def to_dict(self):
        return {"family": self.family, "generator": self.generator.to_dict()}


@dataclass(frozen=True)
class TPower(Implication):
    """T-power implication of the minimum (``generator=None``) or an Archimedean t-norm."""

    generator: Generator | None = None
    family = "t-power"

    def __post_init__(self):
        g = self.generator
        if g is not None and g.kind != "tnorm-additive":
            object.__setattr__(self, "generator", Generator(g.name, g.params, "tnorm-additive"))

    def __call__(self, x, y):
        if x <= y:
            return 1.0
        t = self.generator
        if t is None:
            return 0.0
        ty = t(y)
        if math.isinf(ty):
            return 0.0
        return _clip(t(x) / ty)

    def to_dict(self):
        d = {"family": self.family}
        if self.generator is not None:
            d["generator"] = self.generator.to_dict()
        return d


@dataclass(frozen=True)
class Probabilistic(Implication):
    """``C(x, y) / x`` for x > 0, else 1; rejected unless (I1) holds on the 101-grid."""

    copula: Copula
    family = "probabilistic"

    def __post_init__(self):
        pts = DEFAULT_GRID.points
        for y in pts:
            prev = self(0.0, y)
            for x in pts[1:]:
                cur = self(x, y)
                if cur > prev + 1e-9:
                    raise SpecError(
                        f"probabilistic implication of the {self.copula.family} copula "
                        f"is not non-increasing in x (at x={x}, y={y})"
                    )
                prev = cur

    def __call__(self, x, y):
        if x > 0.0:
            return _clip(self.copula(x, y) / x)
        return 1.0

    def to_dict(self):
        return {"family": self.family, "copula": self.copula.to_dict()}


@dataclass(frozen=True)
class ProbabilisticS(Implication):
    copula: Copula
    family = "probabilistic-s"

    def __call__(self, x, y):
        return _clip(self.copula(x, y) - x + 1.0)

    def to_dict(self):
        return {"family": self.family, "copula": self.copula.to_dict()}


@dataclass(frozen=True)
class Meet(Implication):
    first: Implication
    second: Implication
    family = "meet"

    @property
    def exact(self):
        return self.first.exact and self.second.exact

    def __call__(self, x, y):
        return min(self.first(x, y), self.second(x, y))

    def to_dict(self):
        return {"family": self.family, "first": self.first.to_dict(), "second": self.second.to_dict()}


@dataclass(frozen=True)
class Join(Meet):
    family = "join"

    def __call__(self, x, y):
        return max(self.first(x, y), self.second(x, y))


@dataclass(frozen=True)
class ConjugatedImplication(Implication):
    base: Implication
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
class Contrapositivisation(Implication):
    """N-lower or N-upper contrapositivisation.

    lower: ``I(x, y)`` when ``y >= N(x)``, otherwise ``I(N(y), N(x))``;
    upper: ``I(x, y)`` when ``y <= N(x)``, otherwise ``I(N(y), N(x))``.
    """

    base: Implication
    negation: Negation
    side: Literal["lower", "upper"] = "lower"
    family = "contrapositivisation"

    def __post_init__(self):
        if self.side not in ("lower", "upper"):
            raise SpecError(f"contrapositivisation side must be 'lower' or 'upper', got {self.side!r}")

    @property
    def exact(self):
        return self.base.exact and self.negation.exact

    def __call__(self, x, y):
        n = self.negation
        nx = n(x)
        keep = y >= nx if self.side == "lower" else y <= nx
        if keep:
            return self.base(x, y)
        return self.base(n(y), nx)

    def to_dict(self):
        return {
            "family": self.family,
            "base": self.base.to_dict(),
            "negation": self.negation.to_dict(),
            "side": self.side,
        }


@dataclass(frozen=True)
class TabulatedImplication(Implication):
    x: tuple[float, ...]
    y: tuple[float, ...]
    value: tuple[tuple[float, ...], ...]
    family = "tabulated"

    def __post_init__(self):
        _check_table(self.x, self.y, self.value, "tabulated implication")
        t = self.value
        for i in range(len(self.x)):
            for j in range(len(self.y)):
                if (i and t[i][j] > t[i - 1][j]) or (j and t[i][j] < t[i][j - 1]):
                    raise SpecError("tabulated implication must be non-increasing in x and non-decreasing in y")
        if t[0][0] != 1.0 or t[-1][-1] != 1.0 or t[-1][0] != 0.0:
            raise SpecError("tabulated implication must satisfy I(0,0)=I(1,1)=1 and I(1,0)=0")

    def __call__(self, x, y):
        return bilinear(self.x, self.y, self.value, x, y)

    def to_dict(self):
        return {"family": self.family, "x": list(self.x), "y": list(self.y), "value": [list(r) for r in self.value]}


@dataclass(frozen=True)
class FunctionImplication(Implication):
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
        raise SpecError(f"function implication {self.name!r} has no JSON form")


# ---------------------------------------------------------------------------
# operations


def eval_implication(i: Implication, x: float, y: float) -> float:
    return i(unit(x), unit(y))


def natural_negation(i: Implication) -> Negation:
    return NaturalNegationOfImplication(i)


def contrapositivise(i: Implication, n: Negation, side: str = "lower", grid: Grid = DEFAULT_GRID) -> Implication:
    if not is_strong(n, grid):
        warnings.warn("contrapositivisation with a negation that is not strong on the grid", stacklevel=2)
    return Contrapositivisation(i, n, side)


def meet_join_conjugate(i: Implication, other, which: str) -> Implication:
    if which == "meet":
        return Meet(i, other)
    if which == "join":
        return Join(i, other)
    if which == "conjugate":
        return ConjugatedImplication(i, other)
    raise SpecError(f"which must be meet, join or conjugate, got {which!r}")


def implication_axioms(i: Implication, grid: Grid = DEFAULT_GRID) -> dict[str, bool]:
    """(I1)-(I5), (LB) and (RB) by grid scan."""
    pts = grid.points
    table = [[i(x, y) for y in pts] for x in pts]
    n = len(pts)
    i1 = all(table[a + 1][b] <= table[a][b] + EPS for a in range(n - 1) for b in range(n))
    i2 = all(table[a][b + 1] >= table[a][b] - EPS for a in range(n) for b in range(n - 1))
    return {
        "I1": i1,
        "I2": i2,
        "I3": table[0][0] == 1.0,
        "I4": table[-1][-1] == 1.0,
        "I5": table[-1][0] == 0.0,
        "LB": all(abs(v - 1.0) <= EPS for v in table[0]),
        "RB": all(abs(row[-1] - 1.0) <= EPS for row in table),
        "range": all(-EPS <= v <= 1 + EPS for row in table for v in row),
    }


@dataclass
class ImplicationProfile:
    grid: str
    np: bool
    ip: bool
    ep: bool
    op: bool
    cp: bool
    lb: bool
    rb: bool
    witnesses: dict[str, tuple] = field(default_factory=dict)


def profile_implication(
    i: Implication, n: Negation, grid: Grid = DEFAULT_GRID, tol: float | None = None
) -> ImplicationProfile:
    """Scan (NP), (IP), (EP), (OP), (CP(N)), (LB), (RB).

    (EP) is scanned on a sub-grid of at most 21 points; the other laws on
    ``grid``. A failed law records its worst grid violation as witness.
    """
    if tol is None:
        tol = 1e-9 if i.exact and n.exact else 1e-6
    pts = grid.points
    w: dict[str, tuple] = {}

    def law(name, items, defect):
        worst, worst_val = None, 0.0
        for item in items:
            d = defect(*item)
            if d > worst_val:
                worst, worst_val = item, d
        if worst_val > tol:
            w[name] = worst
            return False
        return True

    pairs = list(grid.pairs())
    sub = grid.coarsen(21).points
    triples = [(x, y, z) for x in sub for y in sub for z in sub]

    def op_defect(x, y):
        v = i(x, y)
        is_one = abs(v - 1.0) <= tol
        return 0.0 if is_one == (x <= y) else abs(1.0 - v) if x <= y else 1.0

    return ImplicationProfile(
        grid=grid.describe(),
        np=law("np", [(y,) for y in pts], lambda y: abs(i(1.0, y) - y)),
        ip=law("ip", [(x,) for x in pts], lambda x: abs(i(x, x) - 1.0)),
        ep=law("ep", triples, lambda x, y, z: abs(i(x, i(y, z)) - i(y, i(x, z)))),
        op=law("op", pairs, op_defect),
        cp=law("cp", pairs, lambda x, y: abs(i(x, y) - i(n(y), n(x)))),
        lb=law("lb", [(y,) for y in pts], lambda y: abs(i(0.0, y) - 1.0)),
        rb=law("rb", [(x,) for x in pts], lambda x: abs(i(x, 1.0) - 1.0)),
        witnesses=w,
    )


def builtin_implications() -> dict[str, Implication]:
    """A representative of each implication family, used by catalog-wide checks."""
    from .connectives import LukasiewiczTConorm, Maximum, Minimum, Product, StandardNegation
    from .generators import PowerAutomorphism

    nc = StandardNegation()
    return {
        "lukasiewicz": Lukasiewicz(),
        "reichenbach": Reichenbach(),
        "goedel": RImplication(Minimum()),
        "goguen": RImplication(Product()),
        "kleene-dienes": AnImplication(Maximum(), nc),
        "ql-lukasiewicz-min": QLOperation(LukasiewiczTConorm(), Minimum(), nc),
        "yager": FImplication(Generator.of("neg-log", "f-generator")),
        "f-one-minus": FImplication(Generator.of("one-minus", "f-generator")),
        "g-identity": GImplication(Generator.of("identity", "g-generator")),
        "t-power-min": TPower(),
        "t-power-product": TPower(Generator.of("neg-log", "tnorm-additive")),
        "probabilistic-product": Probabilistic(ProductCopula()),
        "probabilistic-s-product": ProbabilisticS(ProductCopula()),
        "probabilistic-s-lukasiewicz": ProbabilisticS(LukasiewiczCopula()),
        "meet": Meet(Lukasiewicz(), Reichenbach()),
        "join": Join(Lukasiewicz(), Reichenbach()),
        "conjugated": ConjugatedImplication(Lukasiewicz(), PowerAutomorphism(2.0)),
        "contrapositivised-g": Contrapositivisation(GImplication(Generator.of("identity", "g-generator")), nc, "upper"),
    }
