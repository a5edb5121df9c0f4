"""Slow pure-Python references used as independent oracles."""

import math
from fractions import Fraction


def maximal_at(x: dict, alpha: float, k: int) -> float:
    if not x:
        return 0.0
    reach = max(abs(k - i) for i in x)
    best = 0.0
    for n in range(reach + 1):
        s = math.fsum(abs(v) for i, v in x.items() if abs(i - k) <= n)
        best = max(best, (2 * n + 1) ** (alpha - 1) * s)
    return best


def riesz_at(x: dict, alpha: float, k: int) -> float:
    return math.fsum(v * abs(k - i) ** (alpha - 1) for i, v in x.items() if i != k)


def morrey_brute(x: dict, p: float, q: float, reach: int) -> float:
    """Every window with centre and radius within ``reach`` of the support."""
    if not x:
        return 0.0
    a, b = min(x), max(x)
    best = 0.0
    for n in range(reach + 1):
        for m in range(a - reach, b + reach + 1):
            s = math.fsum(abs(v) ** p for i, v in x.items() if abs(i - m) <= n)
            best = max(best, (2 * n + 1) ** (1 / q - 1 / p) * s ** (1 / p))
    return best


def a2_ratio_exact(values) -> Fraction:
    """A_2 ratio ``avg(w) * avg(1/w)`` of integer weights, in exact arithmetic."""
    vals = [Fraction(int(v)) for v in values]
    n = len(vals)
    return sum(vals) / n * sum(1 / v for v in vals) / n
