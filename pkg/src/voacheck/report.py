"""Check outcome records and exact-value rendering."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
STATUSES = (PASS, FAIL, INCONCLUSIVE)


def render(value: Any) -> Any:
    """Turn exact values into JSON-friendly, deterministic renderings."""
    from .fock import Vector, render_terms

    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.6e}"
    if isinstance(value, Vector):
        return render_terms(value.terms) if value.terms else "0"
    if isinstance(value, dict):
        return {str(k): render(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return [render(v) for v in sorted(value)]
    return str(value)


@dataclass
class CheckReport:
    check_id: str
    paper_ref: str
    status: str = PASS
    expected: Dict[str, Any] = field(default_factory=dict)
    computed: Dict[str, Any] = field(default_factory=dict)
    runtime_ms: int = 0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def compare(self, name: str, expected, computed) -> bool:
        """Record an exact comparison; any mismatch flips the report to fail."""
        self.expected[name] = render(expected)
        self.computed[name] = render(computed)
        ok = expected == computed
        if not ok:
            self.status = FAIL
            self.notes.append(f"mismatch: {name}")
        return ok

    def require(self, name: str, ok: bool, computed=None) -> bool:
        self.expected[name] = True
        self.computed[name] = render(computed) if computed is not None else bool(ok)
        if not ok:
            self.status = FAIL
            self.notes.append(f"failed: {name}")
        return bool(ok)

    def record(self, name: str, computed) -> None:
        self.computed[name] = render(computed)

    def mark_inconclusive(self, note: str) -> None:
        if self.status != FAIL:
            self.status = INCONCLUSIVE
        self.notes.append(note)

    def to_dict(self, include_runtime: bool = True) -> Dict[str, Any]:
        d = {
            "check_id": self.check_id,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "expected": self.expected,
            "computed": self.computed,
            "notes": list(self.notes),
        }
        if include_runtime:
            d["runtime_ms"] = self.runtime_ms
        return d


@contextmanager
def timed(report: CheckReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.runtime_ms = int((time.perf_counter() - start) * 1000)
