"""Finitely supported sequences on Z, integer intervals and exponent profiles."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class ProfileError(DomainError):
    """Raised when exponents violate a constraint; ``constraint`` names it."""

    def __init__(self, constraint: str, detail: str = ""):
        self.constraint = constraint
        msg = f"constraint violated: {constraint}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class FiniteSequence:
    """A real sequence on Z with finite support.

    Stored as an offset plus a dense block of values. The block is always
    trimmed so its first and last entries are nonzero; the zero sequence has
    an empty block. Instances are immutable.
    """

    __slots__ = ("_offset", "_values")

    def __init__(self, values: Iterable[float] = (), offset: int = 0):
        arr = np.array(values, dtype=np.float64).ravel()
        if not np.all(np.isfinite(arr)):
            raise DomainError("sequence values must be finite")
        nz = np.flatnonzero(arr)
        if nz.size == 0:
            arr = np.zeros(0)
            offset = 0
        else:
            arr = arr[nz[0]: nz[-1] + 1].copy()
            offset = int(offset) + int(nz[0])
        arr.flags.writeable = False
        self._offset = int(offset)
        self._values = arr

    @classmethod
    def zero(cls) -> "FiniteSequence":
        return cls()

    @classmethod
    def delta(cls, k: int = 0, value: float = 1.0) -> "FiniteSequence":
        return cls([value], offset=k)

    @classmethod
    def from_mapping(cls, entries: Mapping[int, float]) -> "FiniteSequence":
        if not entries:
            return cls()
        lo, hi = min(entries), max(entries)
        vals = np.zeros(hi - lo + 1)
        for k, v in entries.items():
            vals[k - lo] = v
        return cls(vals, offset=lo)

    @property
    def offset(self) -> int:
        return self._offset

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def is_zero(self) -> bool:
        return self._values.size == 0

    @property
    def start(self) -> int:
        if self.is_zero:
            raise DomainError("zero sequence has no support")
        return self._offset

    @property
    def end(self) -> int:
        if self.is_zero:
            raise DomainError("zero sequence has no support")
        return self._offset + self._values.size - 1

    @property
    def span(self) -> int:
        """Diameter of the support, ``end - start``."""
        return self.end - self.start

    def support_run(self) -> "IntervalRun | None":
        if self.is_zero:
            return None
        return IntervalRun(self.start, self.end)

    def nonzero_indices(self) -> np.ndarray:
        return np.flatnonzero(self._values) + self._offset

    def __len__(self) -> int:
        return self._values.size

    def __call__(self, k):
        """Evaluate at an integer or an integer array; zero off the block."""
        scalar = np.isscalar(k)
        idx = np.asarray(k, dtype=np.int64) - self._offset
        inside = (idx >= 0) & (idx < self._values.size)
        out = np.zeros(idx.shape)
        if self._values.size:
            out[inside] = self._values[idx[inside]]
        return float(out) if scalar else out

    def on(self, lo: int, hi: int) -> np.ndarray:
        """Dense values over the inclusive range ``[lo, hi]``."""
        if hi < lo:
            return np.zeros(0)
        return self(np.arange(lo, hi + 1))

    def abs(self) -> "FiniteSequence":
        return FiniteSequence(np.abs(self._values), self._offset)

    def forward_difference(self) -> "FiniteSequence":
        """The sequence ``k -> x(k+1) - x(k)``."""
        if self.is_zero:
            return self
        padded = np.concatenate(([0.0], self._values, [0.0]))
        return FiniteSequence(np.diff(padded), self._offset - 1)

    def map_values(self, fn) -> "FiniteSequence":
        """Apply ``fn`` to the stored block; ``fn(0)`` is assumed to be 0."""
        return FiniteSequence(fn(self._values), self._offset)

    def _combine(self, other: "FiniteSequence", sign: float) -> "FiniteSequence":
        if self.is_zero:
            return other if sign > 0 else -other
        if other.is_zero:
            return self
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        return FiniteSequence(self.on(lo, hi) + sign * other.on(lo, hi), lo)

    def __add__(self, other: "FiniteSequence") -> "FiniteSequence":
        return self._combine(other, 1.0)

    def __sub__(self, other: "FiniteSequence") -> "FiniteSequence":
        return self._combine(other, -1.0)

    def __neg__(self) -> "FiniteSequence":
        return FiniteSequence(-self._values, self._offset)

    def __mul__(self, c: float) -> "FiniteSequence":
        return FiniteSequence(self._values * float(c), self._offset)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSequence):
            return NotImplemented
        return self._offset == other._offset and np.array_equal(self._values, other._values)

    def __hash__(self) -> int:
        return hash((self._offset, self._values.tobytes()))

    def __repr__(self) -> str:
        if self.is_zero:
            return "FiniteSequence(0)"
        return f"FiniteSequence(offset={self._offset}, values={self._values.tolist()!r})"

    def to_dict(self) -> dict:
        return {"offset": self._offset, "values": self._values.tolist()}


@dataclass(frozen=True, order=True)
class IntervalRun:
    """The integer run ``{start, ..., end}``, both ends inclusive."""

    start: int
    end: int

    def __post_init__(self):
        if self.end < self.start:
            raise DomainError(f"empty run [{self.start}, {self.end}]")

    @property
    def cardinality(self) -> int:
        return self.end - self.start + 1

    def __contains__(self, k: int) -> bool:
        return self.start <= k <= self.end

    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.end + 1)

    def intersects(self, other: "IntervalRun") -> bool:
        return self.start <= other.end and other.start <= self.end


@dataclass(frozen=True, order=True)
class SymmetricInterval:
    """``{m - N, ..., m + N}``; ``radius`` is ``N >= 0``."""

    center: int
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise DomainError("radius must be nonnegative")

    @property
    def cardinality(self) -> int:
        return 2 * self.radius + 1

    @property
    def start(self) -> int:
        return self.center - self.radius

    @property
    def end(self) -> int:
        return self.center + self.radius

    def __contains__(self, k: int) -> bool:
        return self.start <= k <= self.end

    def as_run(self) -> IntervalRun:
        return IntervalRun(self.start, self.end)

    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.end + 1)


def dilate(interval: SymmetricInterval, factor: int) -> SymmetricInterval:
    """Concentric dilation by an integer ``factor >= 1``.

    A singleton ``{m}`` dilates to the radius ``factor - 1`` interval, so that
    ``4 S_{m,0}`` holds 7 points.
    """
    if int(factor) != factor or factor < 1:
        raise DomainError("dilation factor must be an integer >= 1")
    factor = int(factor)
    if interval.radius == 0:
        return SymmetricInterval(interval.center, factor - 1)
    return SymmetricInterval(interval.center, factor * interval.radius)


def left_dilate(run: IntervalRun, n: int) -> IntervalRun:
    """Keep the right end and stretch leftwards to ``n`` times the cardinality."""
    if int(n) != n or n < 1:
        raise DomainError("left dilation factor must be an integer >= 1")
    return IntervalRun(run.end - int(n) * run.cardinality + 1, run.end)


class ProfileKind(str, enum.Enum):
    MORREY = "MorreyScale"
    SOBOLEV = "SobolevScale"
    WEIGHTED_MORREY = "WeightedMorreyScale"


@dataclass(frozen=True)
class ExponentProfile:
    """Exponents attached to a fractional order ``alpha``.

    ``s`` and ``t`` are the target Morrey exponents when the kind defines
    them, and ``None`` otherwise.
    """

    kind: ProfileKind
    alpha: float
    p: float
    q: float
    s: float | None = None
    t: float | None = None

    @property
    def p_prime(self) -> float:
        return self.p / (self.p - 1.0)


def _check(ok: bool, constraint: str, detail: str = "") -> None:
    if not ok:
        raise ProfileError(constraint, detail)


def make_profile(kind, alpha: float, p: float, q: float | None = None) -> ExponentProfile:
    """Build and validate an exponent profile.

    Morrey scale needs ``1 < p <= q < 1/alpha`` and yields
    ``s = p / (1 - alpha q)``, ``t = q s / p``. Sobolev scale needs
    ``1 < p < 1/alpha`` and sets ``1/q = 1/p - alpha``. Weighted Morrey scale
    is Sobolev scale plus ``q < 2p`` with ``s = q p / (2p - q)``.
    """
    kind = ProfileKind(kind)
    for name, val in (("alpha", alpha), ("p", p), ("q", q)):
        if val is not None and not math.isfinite(val):
            raise ProfileError(f"{name} finite")
    _check(0.0 < alpha < 1.0, "0<alpha<1", f"alpha={alpha}")
    _check(p > 1.0, "1<p", f"p={p}")
    if kind is ProfileKind.MORREY:
        if q is None:
            raise ProfileError("q given", "Morrey scale needs q")
        _check(p <= q, "p<=q", f"p={p}, q={q}")
        _check(alpha * q < 1.0, "q<1/alpha", f"q={q}, alpha={alpha}")
        s = p / (1.0 - alpha * q)
        return ExponentProfile(kind, alpha, p, q, s, q * s / p)
    _check(alpha * p < 1.0, "p<1/alpha", f"p={p}, alpha={alpha}")
    q_sob = 1.0 / (1.0 / p - alpha)
    if q is not None:
        _check(math.isclose(q, q_sob, rel_tol=1e-12), "1/q=1/p-alpha", f"q={q}, expected {q_sob}")
    if kind is ProfileKind.SOBOLEV:
        return ExponentProfile(kind, alpha, p, q_sob)
    _check(q_sob < 2.0 * p, "q<2p", f"q={q_sob}, p={p}")
    return ExponentProfile(kind, alpha, p, q_sob, q_sob * p / (2.0 * p - q_sob))
