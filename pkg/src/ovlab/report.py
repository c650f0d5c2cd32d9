"""Check records and reports.

A :class:`Report` collects one :class:`Check` per verified relation. Residuals
are the scale-free mismatch from :func:`ovlab.tensors.residual`; in exact mode a
check passes only when the residual is exactly zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .tensors import DEFAULT_TOL, Tensor, format_scalar, residual

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class Check:
    check_id: str
    anchor: str
    status: str
    reason: str = ""
    residual: Any = None
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.anchor,
            "status": self.status,
            "reason": self.reason,
            "residual": None if self.residual is None else format_scalar(self.residual),
            "params": {k: _jsonable(v) for k, v in self.params.items()},
        }


def _jsonable(v):
    if isinstance(v, (Fraction, float)):
        return format_scalar(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


class Report:
    """Ordered collection of checks with a shared float tolerance."""

    def __init__(self, tol: float = DEFAULT_TOL, params: dict | None = None):
        self.tol = tol
        self.params = dict(params or {})
        self.checks: list[Check] = []

    def _add(self, check_id, anchor, status, reason="", res=None, **params):
        chk = Check(check_id, anchor, status, reason, res, {**self.params, **params})
        self.checks.append(chk)
        return chk

    def _passes(self, res) -> bool:
        return res == 0 if isinstance(res, Fraction) else float(res) <= self.tol

    def equal(self, check_id: str, anchor: str, lhs: Tensor, rhs: Tensor, **params) -> Check:
        """Record whether two tensors agree."""
        res = residual(lhs, rhs)
        status = PASS if self._passes(res) else FAIL
        return self._add(check_id, anchor, status, "" if status == PASS else "tensors differ",
                         res, **params)

    def zero(self, check_id: str, anchor: str, t: Tensor, **params) -> Check:
        return self.equal(check_id, anchor, t, t * 0, **params)

    def scalar(self, check_id: str, anchor: str, lhs, rhs, **params) -> Check:
        diff = abs(lhs - rhs)
        if isinstance(diff, Fraction):
            res = diff / max(1, abs(lhs), abs(rhs))
        else:
            res = float(diff) / max(1.0, abs(float(lhs)), abs(float(rhs)))
        status = PASS if self._passes(res) else FAIL
        return self._add(check_id, anchor, status,
                         "" if status == PASS else f"{format_scalar(lhs)} != {format_scalar(rhs)}",
                         res, **params)

    def holds(self, check_id: str, anchor: str, ok: bool, reason: str = "", **params) -> Check:
        return self._add(check_id, anchor, PASS if ok else FAIL, "" if ok else reason,
                         **params)

    def skip(self, check_id: str, anchor: str, reason: str, **params) -> Check:
        return self._add(check_id, anchor, SKIPPED, reason, **params)

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    # summaries --------------------------------------------------------

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def find(self, check_id: str) -> list[Check]:
        return [c for c in self.checks if c.check_id == check_id]

    def status_of(self, check_id: str) -> str:
        return self.get(check_id).status

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def __repr__(self):
        c = self.counts()
        return f"Report(pass={c[PASS]}, fail={c[FAIL]}, skipped={c[SKIPPED]})"
