"""Growth verdicts for sequences of constants indexed by doubling caps."""

from __future__ import annotations

import enum
from typing import Sequence

BOUNDED_BELOW = 0.05
GROWING_FROM = 0.20


class Verdict(str, enum.Enum):
    BOUNDED = "bounded"
    GROWING = "growing"
    INCONCLUSIVE = "inconclusive"


def final_growth(values: Sequence[float]) -> float:
    """Relative increase over the last doubling step."""
    if len(values) < 2:
        raise ValueError("need at least two caps to measure growth")
    prev, last = float(values[-2]), float(values[-1])
    if prev <= 0.0:
        return 0.0 if last <= 0.0 else float("inf")
    return last / prev - 1.0


def classify_growth(values: Sequence[float]) -> Verdict:
    """Bounded below 5% final growth, growing from 20%, inconclusive between."""
    g = final_growth(values)
    if g < BOUNDED_BELOW:
        return Verdict.BOUNDED
    if g >= GROWING_FROM:
        return Verdict.GROWING
    return Verdict.INCONCLUSIVE
