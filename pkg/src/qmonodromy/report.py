"""Residual bookkeeping shared by every identity check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .linalg import Mat


@dataclass
class Residual:
    """Outcome of one exact identity: ``ok`` iff the residual is identically zero."""

    name: str
    ok: bool
    first_failure: str | None = None
    note: str = ""

    def as_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "ok": self.ok}
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure
        if self.note:
            out["note"] = self.note
        return out


def mat_residual(name: str, lhs: Mat, rhs: Mat | None = None, note: str = "") -> Residual:
    diff = lhs if rhs is None else lhs - rhs
    pos = diff.first_nonzero()
    if pos is None:
        return Residual(name, True, note=note)
    return Residual(name, False, f"entry {pos}", note)


def series_residual(name: str, lhs: Any, rhs: Any, note: str = "") -> Residual:
    """Compare two truncated series coefficient by coefficient up to the shorter order."""
    n = min(lhs.order, rhs.order)
    for k in range(n + 1):
        d = lhs[k] - rhs[k]
        if d:
            where = f"t^{k}"
            if isinstance(d, Mat):
                where += f" entry {d.first_nonzero()}"
            return Residual(name, False, where, note)
    return Residual(name, True, note=note)


def first_failure(residuals: Iterable[Residual]) -> str | None:
    for r in residuals:
        if not r.ok:
            return f"{r.name}: {r.first_failure}"
    return None


@dataclass
class CheckResult:
    check_id: str
    representation: str
    grading: tuple[int, int, int] | None
    order: int
    status: str
    first_failing_coefficient: str | None
    wall_time: float
    details: list[Residual] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict[str, Any]:
        return {
            "check-id": self.check_id,
            "representation": self.representation,
            "grading": list(self.grading) if self.grading is not None else None,
            "order": self.order,
            "status": self.status,
            "first-failing-coefficient": self.first_failing_coefficient,
            "wall-time": round(self.wall_time, 4),
            "details": [r.as_dict() for r in self.details],
            "notes": list(self.notes),
        }
