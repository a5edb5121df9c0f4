"""Operator outputs on all of Z: exact near field plus analytic far field.

Outputs of both operators on a finitely supported input decay like
``|k| ** (alpha - 1)``. A :class:`ZProfile` stores the output densely on a
window around the support and evaluates it beyond the window through a far
field formula, which lets sums, superlevel masses and Morrey suprema over
the whole line be computed without truncating at an arbitrary radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import DomainError, FiniteSequence, SymmetricInterval
from .norms import weak_from_samples, window_scan
from .operators import maximal_values, riesz_fast_values
from .weights import UNIT, Weight

BUFFER = 1 << 15
MULTIPOLE_TERMS = 40
_HORIZON = 1e8
_PANEL = 0.25
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


class MaximalFarField:
    """Exact ``M_alpha x`` off the support.

    To the right of the support, the best window centred at ``k`` reaching
    back to support point ``i`` has value ``P(i) * (2(k-i)+1)**(alpha-1)``
    with ``P(i)`` the mass at or right of ``i``; the answer is the upper
    envelope of these curves, which switch leader only towards heavier,
    further-left points. The left side is the mirror image.
    """

    def __init__(self, x: FiniteSequence, alpha: float):
        if x.is_zero:
            raise DomainError("far field of the zero sequence")
        self.alpha = float(alpha)
        self.start, self.end = x.start, x.end
        idx = x.nonzero_indices()
        mag = np.abs(x(idx))
        self._right = self._envelope(idx, np.cumsum(mag[::-1])[::-1], self.end + 1)
        self._left = self._envelope(-idx[::-1], np.cumsum(mag)[::-1], -self.start + 1)
        self.mass = float(mag.sum())

    def _curve(self, pos, weight, k):
        return weight * (2.0 * (k - pos) + 1.0) ** (self.alpha - 1.0)

    def _envelope(self, pos: np.ndarray, weight: np.ndarray, k0: int):
        """Breakpoints and leaders for ``k >= k0``; ``pos`` ascending, ``weight`` decreasing."""
        expo = 1.0 / (1.0 - self.alpha)
        vals = self._curve(pos, weight, k0)
        lead = int(np.flatnonzero(vals == vals.max())[0])
        starts, leaders = [k0], [lead]
        k = k0
        while lead > 0:
            cand = np.arange(lead)
            rho = (weight[cand] / weight[lead]) ** expo
            # first real k with curve(cand) >= curve(lead)
            cross = (rho * (2 * pos[lead] - 1) - 2 * pos[cand] + 1) / (2.0 * (rho - 1.0))
            kk = np.maximum(np.ceil(cross), k + 1)
            # guard against rounding in the crossing formula
            for _ in range(2):
                late = self._curve(pos[cand], weight[cand], kk - 1) >= self._curve(pos[lead], weight[lead], kk - 1)
                kk = np.where(late & (kk - 1 > k), kk - 1, kk)
            knext = kk.min()
            tied = cand[kk == knext]
            tv = self._curve(pos[tied], weight[tied], knext)
            lead = int(tied[np.flatnonzero(tv == tv.max())[0]])
            k = int(knext)
            starts.append(k)
            leaders.append(lead)
        return np.array(starts, dtype=float), np.array(leaders), pos, weight

    def _side(self, env, k):
        starts, leaders, pos, weight = env
        which = leaders[np.searchsorted(starts, k, side="right") - 1]
        return self._curve(pos[which], weight[which], k)

    def __call__(self, k):
        k = np.asarray(k, dtype=float)
        out = np.empty(k.shape)
        right = k > self.end
        left = k < self.start
        if np.any(~(right | left)):
            raise DomainError("far field evaluated on the support hull")
        out[right] = self._side(self._right, k[right])
        out[left] = self._side(self._left, -k[left])
        return out

    def leading(self) -> tuple[float, float]:
        c = self.mass * 2.0 ** (self.alpha - 1.0)
        return c, c


class RieszFarField:
    """Multipole expansion of ``I_alpha x(t)`` for ``|t - c| >= 4h``.

    With ``c`` the support midpoint and ``h`` its half-span,
    ``I x(t) = u**(alpha-1) sum_j C_j M_j (h/u)**j`` where ``u = |t - c|``,
    ``C_j = (1-alpha)_j / j!`` and ``M_j`` are the scaled moments, taken with
    alternating signs on the left.
    """

    def __init__(self, x: FiniteSequence, alpha: float, terms: int = MULTIPOLE_TERMS):
        if x.is_zero:
            raise DomainError("far field of the zero sequence")
        self.alpha = float(alpha)
        self.center = 0.5 * (x.start + x.end)
        self.half = max(0.5 * (x.end - x.start), 1.0)
        d = (x.start + np.arange(len(x)) - self.center) / self.half
        mom = np.empty(terms)
        pw = x.values.copy()
        for j in range(terms):
            mom[j] = pw.sum()
            pw = pw * d
        coef = np.empty(terms)
        coef[0] = 1.0
        for j in range(1, terms):
            coef[j] = coef[j - 1] * (j - alpha) / j
        self._right = coef * mom
        self._left = self._right * (-1.0) ** np.arange(terms)
        self.reach = 4.0 * self.half

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        u = np.abs(t - self.center)
        if np.any(u < self.reach):
            raise DomainError("multipole expansion used too close to the support")
        r = self.half / u
        out = np.zeros(t.shape)
        right = t > self.center
        for series, mask in ((self._right, right), (self._left, ~right)):
            if not mask.any():
                continue
            rr = r[mask]
            acc = np.zeros(rr.shape)
            for cj in series[::-1]:
                acc = acc * rr + cj
            out[mask] = u[mask] ** (self.alpha - 1.0) * acc
        return out

    def leading(self) -> tuple[float, float]:
        c = abs(float(self._right[0]))
        return c, c


_DIRECT = 1 << 16


def _power_mass(g: float, u: float, v):
    """Euler-Maclaurin estimate of ``sum_{k=u}^{v} k**g`` for ``u >= 2**16``."""
    v = np.asarray(v, dtype=float)
    integral = math.log(v / u) if g == -1.0 else (v ** (g + 1) - u ** (g + 1)) / (g + 1)
    ends = 0.5 * (u ** g + v ** g)
    d1 = g * (v ** (g - 1) - u ** (g - 1)) / 12.0
    d3 = g * (g - 1) * (g - 2) * (v ** (g - 3) - u ** (g - 3)) / 720.0
    return integral + ends + d1 - d3


def _weight_sum(w: Weight, u: int, v: int) -> float:
    """``sum_{k=u}^{v} w(k)``; long ranges use a closed form in the regular region."""
    if v < u:
        return 0.0
    if v - u <= 1 << 20:
        return float(np.sum(w.on(u, v)))
    if u <= 0 <= v:
        return _weight_sum(w, u, -1) + float(w(0)) + _weight_sum(w, 1, v)
    if v < 0:
        u, v = -v, -u
        w = w if w.kind != "table" else Weight.table(w.values[::-1], -(w.offset + len(w.values) - 1), w.outside)
    head = max(_DIRECT, w.regular_beyond())
    total = 0.0
    if u < head:
        total += float(np.sum(w.on(u, min(v, head - 1))))
        u = head
        if v < u:
            return total
    if w.kind == "power":
        return total + w.c * float(_power_mass(w.beta, u, v))
    return total + float(w.at_real(np.array([u]))[0]) * (v - u + 1)


def _far_mass(w: Weight, u: int, ends: np.ndarray, sign: int) -> np.ndarray:
    """Masses of ``[u, e]`` (``sign=1``) or ``[e, u]`` (``sign=-1``) for each ``e``."""
    ends = np.asarray(ends, dtype=float)
    far_u = abs(u)
    same_side = (u > 0) if sign > 0 else (u < 0)
    if same_side and far_u >= max(_DIRECT, w.regular_beyond()):
        if w.kind == "power":
            return w.c * _power_mass(w.beta, far_u, np.abs(ends))
        c = float(w.at_real(np.array([u]))[0])
        return c * (np.abs(ends - u) + 1)
    return np.array([_weight_sum(w, *sorted((u, int(e)))) for e in ends])


@dataclass
class _Side:
    """One far half-line ``k = edge + sign * j`` for ``j >= 1``."""

    edge: int
    sign: int


class ZProfile:
    """A nonnegative-decaying output sequence on Z.

    ``near`` holds exact values on ``[lo, hi]``; ``far`` evaluates (at real
    arguments too) beyond that window.
    """

    def __init__(self, lo: int, near: np.ndarray, far: Callable, alpha: float,
                 leading: tuple[float, float]):
        self.lo = int(lo)
        self.near = np.asarray(near, dtype=float)
        self.hi = self.lo + self.near.size - 1
        self.far = far
        self.alpha = float(alpha)
        self.leading = leading
        self._buf = {}

    def values(self, u: int, v: int) -> np.ndarray:
        k = np.arange(u, v + 1)
        out = np.empty(k.size)
        inside = (k >= self.lo) & (k <= self.hi)
        out[inside] = self.near[k[inside] - self.lo]
        if (~inside).any():
            out[~inside] = self.far(k[~inside].astype(float))
        return out

    def _sides(self):
        return (_Side(self.hi, 1), _Side(self.lo, -1))

    def _buffer(self, side: _Side) -> tuple[np.ndarray, np.ndarray]:
        key = side.sign
        if key not in self._buf:
            k = side.edge + side.sign * np.arange(1, BUFFER + 1)
            self._buf[key] = (k, np.abs(self.far(k.astype(float))))
        return self._buf[key]

    def decay_exponent(self, side: _Side) -> float:
        """Observed exponent of ``|y(k)|`` far out on one side."""
        t = abs(side.edge) + 1e6 * (self.hi - self.lo + 2)
        a = abs(float(self.far(np.array([side.sign * t]))[0]))
        b = abs(float(self.far(np.array([side.sign * 2 * t]))[0]))
        if a == 0.0 or b == 0.0:
            return -np.inf
        return math.log(b / a) / math.log(2.0)

    # ---- sums of |y|**r * w over the line ---------------------------------

    def _g(self, side: _Side, r: float, w: Weight, j) -> np.ndarray:
        t = side.edge + side.sign * np.asarray(j, dtype=float)
        return np.abs(self.far(t)) ** r * w.at_real(t)

    def _side_exponent(self, side: _Side, r: float, w: Weight) -> float:
        return -self.decay_exponent(side) * r - w.tail_exponent()

    def _integral(self, side: _Side, r: float, w: Weight, j0: float, j1: float | None) -> float:
        """Integral of the tail density over distances ``[j0, j1]`` (``j1=None``: infinity).

        Composite Gauss-Legendre in ``log j``, where the density is smooth and
        close to exponential.
        """
        end = j1 if j1 is not None else j0 * _HORIZON
        span = math.log(end / j0)
        panels = max(1, int(math.ceil(span / _PANEL)))
        edges = np.linspace(0.0, span, panels + 1)
        half = 0.5 * np.diff(edges)
        mids = 0.5 * (edges[1:] + edges[:-1])
        s = (mids[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
        wts = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
        j = j0 * np.exp(s)
        val = float(np.sum(wts * self._g(side, r, w, j) * j))
        if j1 is None:
            expo = self._side_exponent(side, r, w)
            val += float(self._g(side, r, w, [end])[0]) * end / (expo - 1.0)
        return val

    def side_sum(self, side: _Side, r: float, w: Weight, count: int | None = None) -> float:
        """``sum_{j=1}^{count} |y(edge + sign j)|**r w`` (``count=None``: the whole half-line).

        The first ``BUFFER`` terms are summed directly; the rest is a midpoint
        rule integral with its leading Euler-Maclaurin correction.
        """
        if count is not None and count <= 0:
            return 0.0
        if count is None and self._side_exponent(side, r, w) <= 1.0 + 1e-9:
            return math.inf
        k, y = self._buffer(side)
        if count is not None and count <= BUFFER:
            return float(np.sum(y[:count] ** r * w(k[:count])))
        total = float(np.sum(y ** r * w(k)))

        def slope(j):
            a, b = self._g(side, r, w, [j, j + 1])
            return float(b - a)

        j0 = BUFFER + 0.5
        if count is None:
            return total + self._integral(side, r, w, j0, None) + slope(BUFFER) / 24.0
        j1 = count + 0.5
        return total + self._integral(side, r, w, j0, j1) + (slope(BUFFER) - slope(count)) / 24.0

    def power_sum(self, r: float, w: Weight | None = None) -> float:
        """``sum_Z |y|**r w``."""
        w = w or UNIT
        near = float(np.sum(np.abs(self.near) ** r * w.on(self.lo, self.hi)))
        return near + sum(self.side_sum(s, r, w) for s in self._sides())

    def range_power_sum(self, u: int, v: int, r: float, w: Weight | None = None) -> float:
        w = w or UNIT
        lo, hi = max(u, self.lo), min(v, self.hi)
        total = float(np.sum(np.abs(self.near[lo - self.lo: hi - self.lo + 1]) ** r * w.on(lo, hi))) if lo <= hi else 0.0
        right, left = self._sides()
        if v > self.hi:
            total += self.side_sum(right, r, w, v - self.hi) - self.side_sum(right, r, w, max(u - 1 - self.hi, 0))
        if u < self.lo:
            total += self.side_sum(left, r, w, self.lo - u) - self.side_sum(left, r, w, max(self.lo - v - 1, 0))
        return total

    # ---- superlevel sets --------------------------------------------------

    def _far_extent(self, side: _Side, level: np.ndarray) -> np.ndarray:
        """Largest ``j > BUFFER`` with ``|y(edge + sign j)| >= level`` (``BUFFER`` if none).

        Relies on ``|y|`` decreasing beyond the buffer.
        """
        level = np.asarray(level, dtype=float)

        def mag(j):
            return np.abs(self.far((side.edge + side.sign * j).astype(float)))

        lo = np.full(level.shape, float(BUFFER))
        hi = np.full(level.shape, float(BUFFER))
        active = mag(hi + 1) >= level
        hi[active] = 2 * BUFFER
        for _ in range(200):
            grow = active & (mag(hi) >= level)
            if not grow.any():
                break
            lo[grow] = hi[grow]
            hi[grow] *= 2
            if np.any(hi > 1e300):
                raise DomainError("superlevel set does not end")
        # invariant: mag(lo) >= level (or lo == BUFFER), mag(hi) < level
        for _ in range(1100):
            gap = active & (hi - lo > 1)
            if not gap.any():
                break
            mid = np.floor(0.5 * (lo + hi))
            ok = mag(mid) >= level
            lo = np.where(gap & ok, mid, lo)
            hi = np.where(gap & ~ok, mid, hi)
        return np.where(active, lo, float(BUFFER))

    def weak_norm(self, r: float, w: Weight | None = None) -> float:
        """``sup_lambda lambda * w({|y| > lambda}) ** (1/r)`` over Z."""
        w = w or UNIT
        gamma = w.tail_exponent()
        expo = self.alpha - 1.0 + (1.0 + gamma) / r
        if expo > 1e-12:
            return math.inf
        parts_mag = [np.abs(self.near)]
        parts_w = [w.on(self.lo, self.hi)]
        sides = self._sides()
        for s in sides:
            k, y = self._buffer(s)
            parts_mag.append(y)
            parts_w.append(w(k))
        # geometric probes beyond the buffer
        probes = []
        for s in sides:
            j = BUFFER * 2.0 ** np.arange(1, 60)
            j = j[j < 1e15]
            pk = s.edge + s.sign * j
            probes.append(np.abs(self.far(pk)))
        mag = np.concatenate(parts_mag)
        wt = np.concatenate(parts_w)
        keep = mag > 0
        mag, wt = mag[keep], wt[keep]
        probe_levels = np.concatenate(probes)
        levels = np.concatenate((mag, probe_levels))
        weights = np.concatenate((wt, np.zeros(probe_levels.size)))
        extra = np.zeros(levels.size)
        for s in sides:
            _, y = self._buffer(s)
            need = levels <= y[-1]
            if need.any():
                ext = self._far_extent(s, levels[need])
                beyond = ext > BUFFER
                add = np.zeros(ext.size)
                if beyond.any():
                    add[beyond] = _far_mass(w, s.edge + s.sign * (BUFFER + 1),
                                            s.edge + s.sign * ext[beyond], s.sign)
                extra[need] += add
        best = weak_from_samples(levels, weights, r, extra_mass=extra)
        if abs(expo) <= 1e-12:
            c = w.c if w.kind != "table" else w.outside
            lim = (sum(cl ** r for cl in self.leading) * c / (1.0 + gamma)) ** (1.0 / r)
            best = max(best, lim)
        return best

    # ---- Morrey suprema ---------------------------------------------------

    def morrey(self, p: float, q: float, omega: Weight | None = None, v: Weight | None = None,
               window: tuple[int, int] | None = None) -> tuple[float, SymmetricInterval]:
        """Morrey-type sup of the output.

        Windows inside ``window`` (default: the stored near range) are scanned
        exactly; larger windows are probed at radii growing by factors of two
        about the window's centre and ends.
        """
        omega, v = omega or UNIT, v or UNIT
        e = 1.0 / q - 1.0 / p
        u0, v0 = window if window is not None else (self.lo, self.hi)
        vals = self.values(u0, v0)
        content = np.abs(vals) ** p * omega.on(u0, v0)
        size = v.on(u0, v0)
        best, i, radius = window_scan(content, size, p, q)
        wit = SymmetricInterval(u0 + i, radius)
        for c in sorted({(u0 + v0) // 2, u0, v0}):
            rad = max((v0 - u0) // 2, 1)
            while rad < 1e12:
                cs = self.range_power_sum(c - rad, c + rad, p, omega)
                vs = _weight_sum(v, c - rad, c + rad)
                val = vs ** e * cs ** (1.0 / p)
                if val > best:
                    best, wit = val, SymmetricInterval(c, rad)
                rad *= 2
        return best, wit


def maximal_profile(x: FiniteSequence, alpha: float) -> ZProfile:
    far = MaximalFarField(x, alpha)
    return ZProfile(x.start, maximal_values(x, alpha, x.start, x.end), far, alpha, far.leading())


def riesz_profile(x: FiniteSequence, alpha: float) -> ZProfile:
    far = RieszFarField(x, alpha)
    reach = int(math.ceil(far.reach - 0.5 * (x.end - x.start))) + 2
    lo, hi = x.start - reach, x.end + reach
    near = riesz_fast_values(x, alpha, lo, hi)
    return ZProfile(lo, near, far, alpha, far.leading())
