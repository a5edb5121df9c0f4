"""Weighted Lebesgue, weak Lebesgue and (weighted) Morrey norms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DomainError, FiniteSequence, SymmetricInterval
from .weights import UNIT, Weight


@dataclass(frozen=True)
class MorreyResult:
    value: float
    witness: SymmetricInterval | None

    def to_dict(self) -> dict:
        wit = None if self.witness is None else {"m": self.witness.center, "N": self.witness.radius}
        return {"value": self.value, "witness": wit}


def _check_p(p: float) -> None:
    if not (np.isfinite(p) and p >= 1):
        raise DomainError(f"p={p} must be >= 1")


def lp_norm(x: FiniteSequence, p: float, weight: Weight | None = None) -> float:
    _check_p(p)
    if x.is_zero:
        return 0.0
    w = (weight or UNIT).on(x.start, x.end)
    return float(np.sum(np.abs(x.values) ** p * w) ** (1.0 / p))


def weak_lp_norm(x: FiniteSequence, p: float, weight: Weight | None = None) -> float:
    """``max_v v * w({|x| >= v}) ** (1/p)`` over the distinct magnitudes ``v``."""
    _check_p(p)
    if x.is_zero:
        return 0.0
    mag = np.abs(x.values)
    w = (weight or UNIT).on(x.start, x.end)
    keep = mag > 0
    return weak_from_samples(mag[keep], w[keep], p)


def weak_from_samples(mag: np.ndarray, w: np.ndarray, p: float,
                      extra_mass: np.ndarray | None = None) -> float:
    """Weak norm from magnitudes and their weights.

    ``extra_mass``, if given, is added to the superlevel mass of each sample
    (mass living outside the sampled points).
    """
    order = np.argsort(-mag, kind="stable")
    m = mag[order]
    cum = np.cumsum(w[order])
    # for tied magnitudes keep the last (largest) cumulative mass
    last = np.r_[m[1:] != m[:-1], True]
    vals, mass = m[last], cum[last]
    if extra_mass is not None:
        mass = mass + extra_mass[order][last]
    return float(np.max(vals * mass ** (1.0 / p)))


def layer_cake(x: FiniteSequence, p: float, weight: Weight | None = None) -> float:
    """``sum_j (v_j**p - v_{j-1}**p) * w({|x| > v_{j-1}})`` over sorted distinct magnitudes."""
    _check_p(p)
    if x.is_zero:
        return 0.0
    mag = np.abs(x.values)
    w = (weight or UNIT).on(x.start, x.end)
    levels = np.unique(mag[mag > 0])
    prev = np.r_[0.0, levels[:-1]]
    # mass strictly above each previous level
    order = np.argsort(mag)
    sm, sw = mag[order], w[order]
    above = np.cumsum(sw[::-1])[::-1]
    idx = np.searchsorted(sm, prev, side="right")
    mass = np.where(idx < sm.size, above[np.minimum(idx, sm.size - 1)], 0.0)
    return float(np.sum((levels ** p - prev ** p) * mass))


def window_scan(content: np.ndarray, size: np.ndarray, p: float, q: float) -> tuple[float, int, int]:
    """Sup over symmetric windows of ``size(S)**(1/q-1/p) * content(S)**(1/p)``.

    Arrays are indexed by position; returns (value, centre index, radius).
    Window sums grow by adding the two new end terms, so no differences of
    large partial sums are ever taken. A radius is skipped when the bound
    from its smallest size and largest content cannot beat the best so far.
    """
    e = 1.0 / q - 1.0 / p
    width = content.size
    c_sum = content.astype(float).copy()
    v_sum = size.astype(float).copy()
    flat = bool(np.all(size == size[0]))
    best, arg = 0.0, (0, 0)
    for radius in range((width - 1) // 2 + 1):
        if radius:
            c_sum = c_sum[1:-1] + content[: width - 2 * radius] + content[2 * radius:]
            v_sum = v_sum[1:-1] + size[: width - 2 * radius] + size[2 * radius:]
        i = int(np.argmax(c_sum))
        cmax = c_sum[i]
        if flat:
            val = v_sum[i] ** e * cmax ** (1.0 / p)
        else:
            if v_sum.min() ** e * cmax ** (1.0 / p) <= best:
                continue
            vals = v_sum ** e * c_sum ** (1.0 / p)
            i = int(np.argmax(vals))
            val = vals[i]
        if val > best:
            best, arg = float(val), (i + radius, radius)
    return best, arg[0], arg[1]


def weighted_morrey_norm(x: FiniteSequence, p: float, q: float,
                         omega: Weight | None = None, v: Weight | None = None) -> MorreyResult:
    """``sup v(S)**(1/q-1/p) * (sum_S |x|**p omega)**(1/p)`` with its attaining window.

    Only windows inside one step of the support are scanned: a window that
    reaches two or more points past the support can be shrunk by one point on
    that side without losing content, and the prefactor does not decrease.
    """
    _check_p(p)
    if q < p:
        raise DomainError("Morrey norms need p <= q")
    if x.is_zero:
        return MorreyResult(0.0, None)
    lo, hi = x.start - 1, x.end + 1
    content = np.abs(x.on(lo, hi)) ** p * (omega or UNIT).on(lo, hi)
    size = (v or UNIT).on(lo, hi)
    val, i, radius = window_scan(content, size, p, q)
    return MorreyResult(val, SymmetricInterval(lo + i, radius))


def morrey_norm(x: FiniteSequence, p: float, q: float) -> MorreyResult:
    return weighted_morrey_norm(x, p, q)


def morrey_norm_wide_scan(x: FiniteSequence, p: float, q: float, omega: Weight | None = None,
                          v: Weight | None = None, stretch: int = 1) -> MorreyResult:
    """Direct scan over radii ``N <= stretch * span`` and centres ``[start - N, end + N]``."""
    if x.is_zero:
        return MorreyResult(0.0, None)
    omega, v = omega or UNIT, v or UNIT
    e = 1.0 / q - 1.0 / p
    a, b = x.start, x.end
    top = stretch * max(b - a, 0) + 1
    lo, hi = a - (stretch + 1) * top, b + (stretch + 1) * top
    content = np.abs(x.on(lo, hi)) ** p * omega.on(lo, hi)
    size = v.on(lo, hi)
    best, wit = 0.0, None
    for radius in range(top + 1):
        for m in range(a - stretch * radius, b + stretch * radius + 1):
            s = slice(m - radius - lo, m + radius - lo + 1)
            val = float(np.sum(size[s]) ** e * np.sum(content[s]) ** (1.0 / p))
            if val > best:
                best, wit = val, SymmetricInterval(m, radius)
    return MorreyResult(best, wit)
