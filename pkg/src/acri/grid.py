from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import SpecError


@dataclass(frozen=True)
class Grid:
    """Sorted sample points of [0,1], endpoints included."""

    points: tuple[float, ...]

    def __post_init__(self):
        pts = tuple(sorted(set(float(p) for p in self.points)))
        if len(pts) < 2 or pts[0] != 0.0 or pts[-1] != 1.0:
            raise SpecError("a grid needs at least 2 points and must contain 0 and 1")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, n: int = 101) -> "Grid":
        if n < 2:
            raise SpecError(f"grid size must be >= 2, got {n}")
        return cls(tuple(i / (n - 1) for i in range(n)))

    def coarsen(self, n: int = 21) -> "Grid":
        """Uniform sub-grid with at most ``n`` points, picked from this grid when possible."""
        if len(self) <= n:
            return self
        step = (len(self) - 1) / (n - 1)
        return Grid(tuple(self.points[round(i * step)] for i in range(n)))

    def map(self, fn: Callable[[float], float]) -> "Grid":
        return Grid(tuple(min(1.0, max(0.0, fn(p))) for p in self.points))

    def __iter__(self) -> Iterator[float]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def pairs(self) -> Iterator[tuple[float, float]]:
        for x in self.points:
            for y in self.points:
                yield x, y

    def describe(self) -> str:
        n = len(self)
        if self == Grid.uniform(n):
            return f"uniform({n})"
        return f"custom({n} points)"


DEFAULT_GRID = Grid.uniform(101)
