"""Verification records: every identity check produces one record with its raw residual."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    check_id: str
    paper_anchor: str
    residual: float
    tolerance: float
    passed: bool
    example_id: str = ""

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "example_id": self.example_id,
        }


@dataclass
class VerificationReport:
    """Accumulates (check id, anchor, residual, tolerance, pass) records.

    The pass flag is always derived as ``residual <= tolerance``; callers
    never set it directly, so the record invariant holds by construction.
    """

    records: list[CheckRecord] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    def check(self, check_id: str, anchor: str, residual: float, tolerance: float,
              example_id: str = "") -> bool:
        residual = float(residual)
        ok = residual <= tolerance
        self.records.append(CheckRecord(check_id, anchor, residual, float(tolerance),
                                        ok, example_id))
        return ok

    def check_flag(self, check_id: str, anchor: str, ok: bool, example_id: str = "") -> bool:
        """Record a boolean check as residual 0 (pass) or 1 (fail) against tolerance 0.5."""
        return self.check(check_id, anchor, 0.0 if ok else 1.0, 0.5, example_id)

    def skip(self, stage: str) -> None:
        self.skipped.append(stage)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.records.extend(other.records)
        self.skipped.extend(other.skipped)
        self.timings.update(other.timings)
        return self

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records) and not self.skipped

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def summary(self) -> dict:
        passed = sum(r.passed for r in self.records)
        return {
            "total": len(self.records),
            "passed": passed,
            "failed": len(self.records) - passed,
            "skipped_stages": len(self.skipped),
        }

    def worst_residual(self) -> float:
        return max((r.residual for r in self.records), default=0.0)

    # -- emission ------------------------------------------------------------

    def as_dict(self, with_timings: bool = True) -> dict:
        out = {
            "version": 1,
            "records": [r.as_dict() for r in self.records],
            "skipped_stages": list(self.skipped),
            "summary": self.summary(),
        }
        if with_timings:
            out["timings"] = dict(self.timings)
        return out

    def to_json(self, with_timings: bool = True) -> str:
        return json.dumps(self.as_dict(with_timings), indent=2, sort_keys=True)

    def to_text(self) -> str:
        """Human summary grouped by check-id prefix, worst residual per group."""
        groups: dict[str, list[CheckRecord]] = {}
        for r in self.records:
            groups.setdefault(r.check_id.split(".")[0], []).append(r)
        lines = []
        for name in sorted(groups):
            recs = groups[name]
            worst = max(recs, key=lambda r: r.residual)
            n_fail = sum(not r.passed for r in recs)
            status = "FAIL" if n_fail else "ok"
            lines.append(f"{status:4s}  {name:28s} checks={len(recs):3d} failed={n_fail:3d} "
                         f"worst_residual={worst.residual:.3e} ({worst.check_id})")
        for r in self.failures:
            lines.append(f"      FAILED {r.check_id} [{r.example_id}] residual={r.residual:.3e} "
                         f"tol={r.tolerance:.1e} anchor={r.paper_anchor}")
        for stage in self.skipped:
            lines.append(f"      SKIPPED stage {stage} (upstream failure)")
        s = self.summary()
        lines.append(f"total {s['total']} checks, {s['passed']} passed, {s['failed']} failed, "
                     f"{s['skipped_stages']} stages skipped")
        return "\n".join(lines)
