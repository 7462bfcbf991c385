"""Unary generators and automorphisms of the unit interval.

A generator is a continuous strictly monotone map ``[0,1] -> [-inf, inf]``
picked from a small parametric catalog. Every catalog entry knows its
closed-form inverse; :meth:`Generator.inverse` is the pseudo-inverse, i.e.
arguments outside the range are clamped to the nearest endpoint of [0,1].
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Callable, Literal

from .errors import SpecError

INF = math.inf

GeneratorKind = Literal[
    "f-generator",
    "g-generator",
    "tnorm-additive",
    "tconorm-additive",
    "copula-additive",
    "any",
]

DECREASING_KINDS = {"f-generator", "tnorm-additive", "copula-additive"}
INCREASING_KINDS = {"g-generator", "tconorm-additive"}


def _neg_log(x: float) -> float:
    return INF if x <= 0.0 else -math.log(x)


def _neg_log_complement(x: float) -> float:
    return INF if x >= 1.0 else -math.log1p(-x)


def _logit(x: float) -> float:
    if x <= 0.0:
        return -INF
    if x >= 1.0:
        return INF
    return math.log(x / (1.0 - x))


def _expit(v: float) -> float:
    if v >= 0:
        return 1.0 / (1.0 + math.exp(-v))
    e = math.exp(v)
    return e / (1.0 + e)


def _clayton(theta: float) -> tuple[Callable, Callable]:
    def fwd(x: float) -> float:
        if x <= 0.0:
            return INF
        return (x ** -theta - 1.0) / theta

    def inv(v: float) -> float:
        return (1.0 + theta * v) ** (-1.0 / theta)

    return fwd, inv


def _gumbel(theta: float) -> tuple[Callable, Callable]:
    def fwd(x: float) -> float:
        if x <= 0.0:
            return INF
        return (-math.log(x)) ** theta

    def inv(v: float) -> float:
        return math.exp(-(v ** (1.0 / theta)))

    return fwd, inv


# name -> (builder(params) -> (forward, inverse), increasing?, required params)
def _catalog(name: str, params: dict) -> tuple[Callable, Callable, bool]:
    if name == "identity":
        return (lambda x: x), (lambda v: v), True
    if name == "one-minus":
        return (lambda x: 1.0 - x), (lambda v: 1.0 - v), False
    if name == "neg-log":
        return _neg_log, (lambda v: math.exp(-v)), False
    if name == "neg-log-complement":
        return _neg_log_complement, (lambda v: -math.expm1(-v)), True
    if name == "logit":
        return _logit, _expit, True
    if name == "power":
        p = float(params["p"])
        if p <= 0:
            raise SpecError(f"power generator needs p > 0, got {p}")
        return (lambda x: x ** p), (lambda v: v ** (1.0 / p)), True
    if name == "one-minus-power":
        p = float(params["p"])
        if p <= 0:
            raise SpecError(f"one-minus-power generator needs p > 0, got {p}")
        return (lambda x: 1.0 - x ** p), (lambda v: (1.0 - v) ** (1.0 / p)), False
    if name == "clayton":
        theta = float(params["theta"])
        if theta <= 0:
            raise SpecError(f"clayton generator needs theta > 0, got {theta}")
        fwd, inv = _clayton(theta)
        return fwd, inv, False
    if name == "gumbel":
        theta = float(params["theta"])
        if theta < 1:
            raise SpecError(f"gumbel generator needs theta >= 1, got {theta}")
        fwd, inv = _gumbel(theta)
        return fwd, inv, False
    raise SpecError(f"unknown generator {name!r}")


GENERATOR_NAMES = (
    "identity",
    "one-minus",
    "neg-log",
    "neg-log-complement",
    "logit",
    "power",
    "one-minus-power",
    "clayton",
    "gumbel",
)


@dataclass(frozen=True)
class Generator:
    """A catalog generator, validated against the endpoint rules of ``kind``."""

    name: str
    params: tuple[tuple[str, float], ...] = ()
    kind: GeneratorKind = "any"
    _fwd: Callable = field(init=False, repr=False, compare=False)
    _inv: Callable = field(init=False, repr=False, compare=False)
    increasing: bool = field(init=False, compare=False)

    def __post_init__(self):
        try:
            fwd, inv, inc = _catalog(self.name, dict(self.params))
        except KeyError as exc:
            raise SpecError(f"generator {self.name!r} is missing parameter {exc}") from None
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_inv", inv)
        object.__setattr__(self, "increasing", inc)
        self._validate()

    @classmethod
    def of(cls, name: str, kind: GeneratorKind = "any", **params: float) -> "Generator":
        return cls(name, tuple(sorted(params.items())), kind)

    @property
    def at_zero(self) -> float:
        return self._fwd(0.0)

    @property
    def at_one(self) -> float:
        return self._fwd(1.0)

    def __call__(self, x: float) -> float:
        return self._fwd(x)

    def inverse(self, v: float) -> float:
        """Pseudo-inverse: exact inverse on the range, clamped outside it."""
        if math.isnan(v):
            raise ValueError("generator inverse of NaN")
        lo, hi = (self.at_zero, self.at_one) if self.increasing else (self.at_one, self.at_zero)
        if v <= lo:
            return 0.0 if self.increasing else 1.0
        if v >= hi:
            return 1.0 if self.increasing else 0.0
        return min(1.0, max(0.0, self._inv(v)))

    def _validate(self, n: int = 1001) -> None:
        if self.kind in DECREASING_KINDS and self.increasing:
            raise SpecError(f"{self.kind} must be decreasing; {self.name} is increasing")
        if self.kind in INCREASING_KINDS and not self.increasing:
            raise SpecError(f"{self.kind} must be increasing; {self.name} is decreasing")
        if self.kind in ("f-generator", "tnorm-additive", "copula-additive") and self.at_one != 0.0:
            raise SpecError(f"{self.kind} needs value 0 at 1; {self.name} gives {self.at_one}")
        if self.kind in ("g-generator", "tconorm-additive") and self.at_zero != 0.0:
            raise SpecError(f"{self.kind} needs value 0 at 0; {self.name} gives {self.at_zero}")
        prev = self._fwd(0.0)
        for i in range(1, n):
            cur = self._fwd(i / (n - 1))
            if (cur <= prev) if self.increasing else (cur >= prev):
                raise SpecError(f"generator {self.name} is not strictly monotone near {i / (n - 1)}")
            prev = cur

    def to_dict(self) -> dict:
        d = {"name": self.name, **dict(self.params)}
        if self.kind != "any":
            d["kind"] = self.kind
        return d


# ---------------------------------------------------------------------------
# automorphisms


class Automorphism:
    """Increasing bijection of [0,1]."""

    family: str

    def __call__(self, x: float) -> float:
        raise NotImplementedError

    def inverse(self, x: float) -> float:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class IdentityAutomorphism(Automorphism):
    family = "identity"

    def __call__(self, x):
        return x

    def inverse(self, x):
        return x

    def to_dict(self):
        return {"family": self.family}


@dataclass(frozen=True)
class PowerAutomorphism(Automorphism):
    exponent: float
    family = "power"

    def __post_init__(self):
        if not self.exponent > 0:
            raise SpecError(f"power automorphism needs exponent > 0, got {self.exponent}")

    def __call__(self, x):
        return x ** self.exponent

    def inverse(self, x):
        return x ** (1.0 / self.exponent)

    def to_dict(self):
        return {"family": self.family, "exponent": self.exponent}


def interpolate(xs, ys, x: float) -> float:
    """Piecewise-linear interpolation on sorted ``xs`` (clamped at the ends)."""
    if x <= xs[0]:
        return ys[0]
    if x >= xs[-1]:
        return ys[-1]
    j = bisect.bisect_right(xs, x)
    x0, x1 = xs[j - 1], xs[j]
    y0, y1 = ys[j - 1], ys[j]
    if x1 == x0:
        return y1
    return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


@dataclass(frozen=True)
class TabulatedAutomorphism(Automorphism):
    x: tuple[float, ...]
    value: tuple[float, ...]
    family = "tabulated"

    def __post_init__(self):
        if len(self.x) != len(self.value) or len(self.x) < 2:
            raise SpecError("tabulated automorphism needs parallel arrays of length >= 2")
        if self.x[0] != 0.0 or self.x[-1] != 1.0 or self.value[0] != 0.0 or self.value[-1] != 1.0:
            raise SpecError("tabulated automorphism must map 0 to 0 and 1 to 1")
        for seq in (self.x, self.value):
            if any(b <= a for a, b in zip(seq, seq[1:])):
                raise SpecError("tabulated automorphism samples must be strictly increasing")

    def __call__(self, x):
        return interpolate(self.x, self.value, x)

    def inverse(self, x):
        return interpolate(self.value, self.x, x)

    def to_dict(self):
        return {"family": self.family, "x": list(self.x), "value": list(self.value)}
