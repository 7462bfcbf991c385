from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any

# violations below this are float noise and are reported as exactly 0
NOISE_FLOOR = 1e-12


@dataclass
class CheckReport:
    law: str
    passed: bool
    worst_violation: float
    witness: Any = None
    grid: str = ""
    tolerance: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def csv_line(self) -> str:
        witness = "" if self.witness is None else " ".join(_fmt(v) for v in _flatten(self.witness))
        return f"{self.law},{self.verdict},{self.worst_violation:.6g},{witness}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = self.verdict
        return d


def _flatten(w):
    if isinstance(w, (list, tuple)):
        for v in w:
            yield from _flatten(v)
    else:
        yield w


def _fmt(v) -> str:
    return f"{v:.6g}" if isinstance(v, float) else str(v)


def scan(law: str, points, defect, tol: float, grid: str = "", **details) -> CheckReport:
    """Evaluate ``defect(*p)`` over ``points``; pass iff the worst defect is within ``tol``."""
    worst, worst_val = None, 0.0
    for p in points:
        d = defect(*p)
        if d > worst_val:
            worst, worst_val = p, d
    if worst_val < NOISE_FLOOR:
        worst_val = 0.0
    passed = worst_val <= tol
    return CheckReport(
        law=law,
        passed=passed,
        worst_violation=worst_val,
        witness=None if passed else worst,
        grid=grid,
        tolerance=tol,
        details=details,
    )
