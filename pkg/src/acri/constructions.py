"""Aggregation functions that make the compositional rule satisfy modus ponens.

For an implication ``I`` the largest admissible aggregator is
``A_I(a, b) = inf{c : I(a, c) >= b}``. :class:`InfimumAggregator` computes it
numerically for any implication; the closed forms below are the exact values
for the generator-based families and serve as a cross-check of each other.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .connectives import (
    Aggregator,
    LukasiewiczTConorm,
    Maximum,
    Negation,
    OrdinalComponent,
    OrdinalSumTConorm,
    ProbabilisticSum,
    StandardNegation,
)
from .errors import PreconditionError, SpecError
from .generators import Automorphism, Generator
from .grid import DEFAULT_GRID, Grid
from .implications import (
    AnImplication,
    ArchimedeanCopula,
    Copula,
    FImplication,
    GImplication,
    Implication,
    Lukasiewicz,
    Probabilistic,
    ProbabilisticS,
    Reichenbach,
    TPower,
)
from .report import CheckReport, scan

# slack when testing I(a, c) >= b, absorbs float noise on plateau edges
INF_SLACK = 1e-12

METHODS = (
    "numeric-infimum",
    "closed-form-f",
    "closed-form-g",
    "closed-form-tpower",
    "closed-form-ordinal-sum-SN",
    "closed-form-probabilistic",
    "closed-form-probabilistic-s",
)


class ConstructedAggregator(Aggregator):
    """An aggregator derived from an implication ``source``."""

    family = "from-implication"
    method: str = ""
    source: Implication

    def to_dict(self):
        return {"family": self.family, "method": self.method, "implication": self.source.to_dict()}


@dataclass(frozen=True)
class InfimumAggregator(ConstructedAggregator):
    source: Implication
    tol: float = 1e-6
    method = "numeric-infimum"
    exact = False

    def __post_init__(self):
        if not self.tol > 0:
            raise SpecError(f"tolerance must be positive, got {self.tol}")

    def __call__(self, a, b):
        i = self.source
        target = b - INF_SLACK
        if i(a, 0.0) >= target:
            return 0.0
        lo, hi = 0.0, 1.0
        while hi - lo > self.tol:
            mid = 0.5 * (lo + hi)
            if i(a, mid) >= target:
                hi = mid
            else:
                lo = mid
        return hi

    def to_dict(self):
        return {**super().to_dict(), "tol": self.tol}


@dataclass(frozen=True)
class FClosedForm(ConstructedAggregator):
    generator: Generator
    method = "closed-form-f"

    @property
    def source(self):
        return FImplication(self.generator)

    def __call__(self, x, y):
        if x == 0.0:
            return 0.0
        f = self.generator
        return f.inverse(f(y) / x)


@dataclass(frozen=True)
class GClosedForm(ConstructedAggregator):
    generator: Generator
    method = "closed-form-g"

    @property
    def source(self):
        return GImplication(self.generator)

    def __call__(self, x, y):
        if x == 0.0:
            return 0.0
        g = self.generator
        return g.inverse(x * g(y))


@dataclass(frozen=True)
class TPowerClosedForm(ConstructedAggregator):
    generator: Generator
    method = "closed-form-tpower"

    @property
    def source(self):
        return TPower(self.generator)

    def __call__(self, x, y):
        if y == 0.0:
            return 0.0
        t = self.generator
        return t.inverse(t(x) / y)


@dataclass(frozen=True)
class OrdinalSumSNClosedForm(ConstructedAggregator):
    """Closed form for ``I(x, y) = S(N(x), y)`` with S an ordinal-sum t-conorm.

    Inside a summand the generator difference is taken as
    ``f(y~) - f(N(x)~)``, which is the non-negative orientation.
    """

    tconorm: Aggregator
    negation: Negation
    method = "closed-form-ordinal-sum-SN"

    def __post_init__(self):
        as_ordinal_sum(self.tconorm)

    @property
    def source(self):
        return AnImplication(self.tconorm, self.negation)

    def __call__(self, x, y):
        nx = self.negation(x)
        if nx >= y - INF_SLACK:
            return 0.0
        for c in as_ordinal_sum(self.tconorm).components:
            if c.contains(nx) and y <= c.upper:
                f = c.generator
                u = min(1.0, max(0.0, c.scale(nx)))
                v = min(1.0, max(0.0, c.scale(y)))
                return c.unscale(f.inverse(f(v) - f(u)))
        return y

    def to_dict(self):
        return {
            "family": self.family,
            "method": self.method,
            "implication": self.source.to_dict(),
        }


@dataclass(frozen=True)
class ProbabilisticClosedForm(ConstructedAggregator):
    generator: Generator
    s_variant: bool = False
    copula: Copula | None = None

    @property
    def method(self):
        return "closed-form-probabilistic-s" if self.s_variant else "closed-form-probabilistic"

    @property
    def source(self):
        cop = self.copula if self.copula is not None else ArchimedeanCopula(self.generator)
        return ProbabilisticS(cop) if self.s_variant else Probabilistic(cop)

    def __call__(self, x, y):
        c = self.generator
        if self.s_variant:
            if x + y <= 1.0 + INF_SLACK:
                return 0.0
            return c.inverse(c(x + y - 1.0) - c(x))
        if x == 0.0 or y == 0.0:
            return 0.0
        return c.inverse(c(x * y) - c(x))


@dataclass(frozen=True)
class StarExtension(Aggregator):
    """Left-continuous extension ``sup{A(u, v) : u < x, v < y}`` on the open square.

    The supremum is read off a refinement grid one ``step`` inside the open
    lower rectangle; by monotonicity of A its largest value sits at the
    corner ``(x - step, y - step)``. Border values are A itself.
    """

    base: Aggregator
    step: float = 1e-3
    family = "star-extension"
    method = "star-extension"

    def __post_init__(self):
        if not 0 < self.step < 0.5:
            raise SpecError(f"refinement step must lie in (0, 0.5), got {self.step}")
        jumps = border_jumps(self.base, step=self.step)
        if jumps:
            warnings.warn(
                f"star extension of a base that is not border continuous, e.g. at {jumps[0]}", stacklevel=3
            )

    @property
    def exact(self):
        return False

    def __call__(self, x, y):
        if 0.0 < x < 1.0 and 0.0 < y < 1.0:
            return self.base(max(x - self.step, 0.0), max(y - self.step, 0.0))
        return self.base(x, y)

    def to_dict(self):
        return {"family": self.family, "base": self.base.to_dict(), "step": self.step}


def border_jumps(a: Aggregator, grid: Grid = DEFAULT_GRID, step: float = 1e-3, jump: float = 0.01):
    """Border points of ``grid`` where A moves by more than ``jump`` within ``step``."""
    bad = []
    for t in grid:
        for p in ((0.0, t), (1.0, t), (t, 0.0), (t, 1.0)):
            v = a(*p)
            for dx in (-step, 0.0, step):
                for dy in (-step, 0.0, step):
                    q = (min(1.0, max(0.0, p[0] + dx)), min(1.0, max(0.0, p[1] + dy)))
                    if abs(a(*q) - v) > jump:
                        bad.append(p)
                        break
                else:
                    continue
                break
    return bad


# ---------------------------------------------------------------------------
# public constructors


def aggregator_from_implication(i: Implication, tol: float = 1e-6) -> InfimumAggregator:
    return InfimumAggregator(i, tol)


def aggregator_for_f_implication(f: Generator) -> FClosedForm:
    return FClosedForm(Generator(f.name, f.params, "f-generator"))


def aggregator_for_g_implication(g: Generator) -> GClosedForm:
    return GClosedForm(Generator(g.name, g.params, "g-generator"))


def aggregator_for_tpower(t: Generator) -> TPowerClosedForm:
    return TPowerClosedForm(Generator(t.name, t.params, "tnorm-additive"))


def aggregator_for_ordinal_sum_sn(components, n: Negation) -> OrdinalSumSNClosedForm:
    comps = tuple(c if isinstance(c, OrdinalComponent) else OrdinalComponent(*c) for c in components)
    return OrdinalSumSNClosedForm(OrdinalSumTConorm(comps), n)


def aggregator_for_probabilistic(c: Generator, s_variant: bool, copula: Copula | None = None):
    return ProbabilisticClosedForm(Generator(c.name, c.params, "copula-additive"), s_variant, copula)


def star_extension(a: Aggregator, step: float = 1e-3) -> StarExtension:
    return StarExtension(a, step)


def as_ordinal_sum(s: Aggregator) -> OrdinalSumTConorm:
    """View a continuous t-conorm from the catalog as an ordinal sum."""
    if isinstance(s, OrdinalSumTConorm):
        return s
    if isinstance(s, LukasiewiczTConorm):
        return OrdinalSumTConorm((OrdinalComponent(0.0, 1.0, Generator.of("identity")),))
    if isinstance(s, ProbabilisticSum):
        return OrdinalSumTConorm((OrdinalComponent(0.0, 1.0, Generator.of("neg-log-complement")),))
    if isinstance(s, Maximum):
        return OrdinalSumTConorm(())
    raise SpecError(f"{s.family} is not a continuous t-conorm with known ordinal-sum structure")


def closed_form(i: Implication, method: str) -> ConstructedAggregator:
    """Closed-form largest aggregator for ``i`` by ``method``; SpecError if inapplicable."""
    if method == "closed-form-f":
        if isinstance(i, FImplication):
            return aggregator_for_f_implication(i.generator)
        if isinstance(i, Reichenbach):
            return aggregator_for_f_implication(Generator.of("one-minus"))
    elif method == "closed-form-g":
        if isinstance(i, GImplication):
            return aggregator_for_g_implication(i.generator)
    elif method == "closed-form-tpower":
        if isinstance(i, TPower) and i.generator is not None:
            return aggregator_for_tpower(i.generator)
    elif method == "closed-form-ordinal-sum-SN":
        if isinstance(i, Lukasiewicz):
            return OrdinalSumSNClosedForm(LukasiewiczTConorm(), StandardNegation())
        if isinstance(i, AnImplication):
            try:
                as_ordinal_sum(i.aggregator)
            except SpecError:
                pass
            else:
                return OrdinalSumSNClosedForm(i.aggregator, i.negation)
    elif method in ("closed-form-probabilistic", "closed-form-probabilistic-s"):
        want = ProbabilisticS if method.endswith("-s") else Probabilistic
        if type(i) is want and i.copula.generator is not None:
            return aggregator_for_probabilistic(i.copula.generator, want is ProbabilisticS, i.copula)
    else:
        raise SpecError(f"unknown construction method {method!r}; expected one of {', '.join(METHODS)}")
    raise SpecError(f"method {method} does not apply to a {i.family} implication")


def default_closed_form(i: Implication) -> str | None:
    for method in METHODS[1:]:
        try:
            closed_form(i, method)
        except SpecError:
            continue
        return method
    return None


def build(i: Implication, method: str, tol: float = 1e-6) -> Aggregator:
    if method == "numeric-infimum":
        return aggregator_from_implication(i, tol)
    return closed_form(i, method)


def max_deviation(a: Aggregator, b: Aggregator, grid: Grid = DEFAULT_GRID) -> tuple[float, tuple]:
    worst, at = 0.0, (0.0, 0.0)
    for x, y in grid.pairs():
        d = abs(a(x, y) - b(x, y))
        if d > worst:
            worst, at = d, (x, y)
    return worst, at


# ---------------------------------------------------------------------------
# bound for conjunctors of the form T(phi_hat(x), y)


def check_conjunctor_bound(
    i: Implication,
    a: Aggregator,
    n: Negation,
    phi: Automorphism,
    grid: Grid = DEFAULT_GRID,
    tol: float = 1e-9,
) -> CheckReport:
    """Check ``I(a, b) <= phi^-1(min(phi(N(a)) + 1 - phi(A(N(b), 1)), 1))`` on ``grid``.

    ``A`` must have left neutral element 1 (C1), an increasing boundary
    section ``x -> A(x, 1)`` below 1 off ``x = 1`` (C2), and satisfy
    ``A(x, A(y, z)) = A(y, A(x, z))`` (C3, on a 21-point sub-grid).
    """
    pts = grid.points
    bad = [x for x in pts if abs(a(1.0, x) - x) > 1e-9]
    if bad:
        raise PreconditionError(f"(C1) fails: A(1, {bad[0]}) = {a(1.0, bad[0])}")
    section = [a(x, 1.0) for x in pts]
    if any(v >= 1.0 for v in section[:-1]):
        raise PreconditionError("(C2) fails: A(x, 1) reaches 1 before x = 1")
    if any(b <= c for c, b in zip(section, section[1:])):
        raise PreconditionError("(C2) fails: x -> A(x, 1) is not strictly increasing")
    sub = grid.coarsen(21).points
    for x in sub:
        for y in sub:
            for z in sub:
                if abs(a(x, a(y, z)) - a(y, a(x, z))) > 1e-9:
                    raise PreconditionError(f"(C3) fails at ({x}, {y}, {z})")

    def bound(u, v):
        return phi.inverse(min(phi(n(u)) + 1.0 - phi(a(n(v), 1.0)), 1.0))

    return scan(
        "conjunctor-bound",
        grid.pairs(),
        lambda u, v: max(i(u, v) - bound(u, v), 0.0),
        tol,
        grid.describe(),
    )
