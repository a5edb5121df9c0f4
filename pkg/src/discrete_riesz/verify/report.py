"""Empirical-constant reports and their serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from ..trend import Verdict, classify_growth


def _num(v):
    if isinstance(v, float) and not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    return v


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    size: int
    lhs: float
    rhs: float
    ratio: float
    status: str = "ok"

    def to_dict(self) -> dict:
        return {"caseId": self.case_id, "size": self.size, "lhs": _num(self.lhs),
                "rhs": _num(self.rhs), "ratio": _num(self.ratio), "status": self.status}


@dataclass(frozen=True)
class EmpiricalConstantReport:
    tag: str
    params: dict
    per_case: tuple
    sup_ratio: float
    growth_trend: tuple
    verdict: Verdict
    notes: tuple = field(default=())

    @property
    def counted(self) -> list[CaseResult]:
        return [c for c in self.per_case if c.status == "ok"]

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "params": {k: _num(v) for k, v in self.params.items()},
            "supRatio": _num(self.sup_ratio),
            "verdict": self.verdict.value,
            "growthTrend": [[cap, _num(v)] for cap, v in self.growth_trend],
            "perCase": [c.to_dict() for c in self.per_case],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["caseId", "size", "lhs", "rhs", "ratio", "status"])
        for c in self.per_case:
            w.writerow([c.case_id, c.size, repr(c.lhs), repr(c.rhs), repr(c.ratio), c.status])
        return buf.getvalue()


def build_report(tag: str, params: dict, results: list[CaseResult], caps,
                 notes=()) -> EmpiricalConstantReport:
    """Aggregate case results; only ``ok`` cases enter the supremum and trend."""
    good = [c for c in results if c.status == "ok"]
    sup = max((c.ratio for c in good), default=0.0)
    trend = []
    for cap in caps:
        vals = [c.ratio for c in good if c.size <= cap]
        trend.append((int(cap), max(vals, default=0.0)))
    if len(trend) >= 2:
        verdict = classify_growth([v for _, v in trend])
    else:
        verdict = Verdict.INCONCLUSIVE
    return EmpiricalConstantReport(tag, dict(params), tuple(results), sup, tuple(trend), verdict, tuple(notes))
