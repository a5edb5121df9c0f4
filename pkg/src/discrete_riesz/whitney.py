"""Whitney-type decomposition of integer sets into symmetric intervals."""

from __future__ import annotations

import bisect
import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import DomainError, IntervalRun, SymmetricInterval, dilate


@dataclass(frozen=True)
class IntegerSet:
    """A union of finite runs and at most one ray in each direction.

    ``right_ray = i0`` adds ``{i0, i0+1, ...}``; ``left_ray = j0`` adds
    ``{..., j0-1, j0}``. Overlapping or adjacent pieces are merged on
    construction, so ``runs`` are maximal and separated from the rays.
    """

    runs: tuple = ()
    right_ray: int | None = None
    left_ray: int | None = None

    def __post_init__(self):
        runs = sorted((int(a), int(b)) for a, b in self.runs)
        for a, b in runs:
            if b < a:
                raise DomainError(f"empty run [{a}, {b}]")
        merged: list[list[int]] = []
        for a, b in runs:
            if merged and a <= merged[-1][1] + 1:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        right, left = self.right_ray, self.left_ray
        if right is not None:
            right = int(right)
            while merged and merged[-1][1] >= right - 1:
                right = min(right, merged.pop()[0])
        if left is not None:
            left = int(left)
            while merged and merged[0][0] <= left + 1:
                left = max(left, merged.pop(0)[1])
        if right is not None and left is not None and right <= left + 1:
            raise DomainError("the set is all of Z")
        if not merged and right is None and left is None:
            raise DomainError("empty set")
        object.__setattr__(self, "runs", tuple(IntervalRun(a, b) for a, b in merged))
        object.__setattr__(self, "right_ray", right)
        object.__setattr__(self, "left_ray", left)

    @classmethod
    def from_points(cls, points: Iterable[int]) -> "IntegerSet":
        return cls(tuple((p, p) for p in set(points)))

    def __contains__(self, k: int) -> bool:
        if self.right_ray is not None and k >= self.right_ray:
            return True
        if self.left_ray is not None and k <= self.left_ray:
            return True
        i = bisect.bisect_right(self._starts, k) - 1
        return i >= 0 and self.runs[i].end >= k

    @functools.cached_property
    def _starts(self) -> list[int]:
        return [r.start for r in self.runs]

    def to_dict(self) -> dict:
        return {"runs": [[r.start, r.end] for r in self.runs],
                "rightRay": self.right_ray, "leftRay": self.left_ray}

    @classmethod
    def from_dict(cls, d: dict) -> "IntegerSet":
        try:
            runs = tuple((int(a), int(b)) for a, b in d.get("runs", []))
        except (TypeError, ValueError):
            raise DomainError("runs must be a list of [start, end] pairs") from None
        return cls(runs, d.get("rightRay"), d.get("leftRay"))


@dataclass(frozen=True)
class Decomposition:
    """Emitted intervals plus the first point of each ray left uncovered."""

    parts: tuple
    right_remainder: int | None = None
    left_remainder: int | None = None

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def to_list(self) -> list[dict]:
        return [{"m": s.center, "N": s.radius} for s in self.parts]


def ray_gap_check(j: int) -> tuple[int, int]:
    """``(d_j, 4 N_j - d_j)`` for the j-th ray interval, ``d_j = 3*2**j + j - 5``."""
    if j < 1:
        raise DomainError("ray index starts at 1")
    d = 3 * 2 ** j + j - 5
    return d, 4 * 2 ** j - d


def centered(run: IntervalRun) -> SymmetricInterval:
    if run.cardinality % 2 == 0:
        raise DomainError("only odd runs are symmetric intervals")
    return SymmetricInterval((run.start + run.end) // 2, (run.cardinality - 1) // 2)


def split_even(run: IntervalRun) -> tuple[IntervalRun, IntervalRun]:
    """Split an even run of size ``2r`` into odd pieces ``(r, r)`` or ``(r-1, r+1)``."""
    r = run.cardinality // 2
    k1 = r if r % 2 else r - 1
    return IntervalRun(run.start, run.start + k1 - 1), IntervalRun(run.start + k1, run.end)


def ray_parts(i0: int, depth: int) -> list[SymmetricInterval]:
    """Right-ray intervals ``S(i0 + 3*2**j + j - 5, 2**j)`` for ``j = 1..depth``."""
    return [SymmetricInterval(i0 + 3 * 2 ** j + j - 5, 2 ** j) for j in range(1, depth + 1)]


def decompose(e: IntegerSet, ray_depth: int) -> Decomposition:
    if ray_depth < 0:
        raise DomainError("ray depth must be nonnegative")
    parts: list[SymmetricInterval] = []
    for run in e.runs:
        if run.cardinality % 2:
            parts.append(centered(run))
        else:
            parts.extend(centered(piece) for piece in split_even(run))
    right_rem = left_rem = None
    if e.right_ray is not None:
        rp = ray_parts(e.right_ray, ray_depth)
        parts.extend(rp)
        right_rem = rp[-1].end + 1 if rp else e.right_ray
    if e.left_ray is not None:
        lp = [SymmetricInterval(-s.center, s.radius) for s in ray_parts(-e.left_ray, ray_depth)]
        parts.extend(lp)
        left_rem = lp[-1].start - 1 if lp else e.left_ray
    parts.sort()
    return Decomposition(tuple(parts), right_rem, left_rem)


@dataclass(frozen=True)
class DecompositionReport:
    disjoint: bool
    covers: bool
    touches_complement: bool
    failures: tuple = field(default=(), compare=False)

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covers and self.touches_complement

    def to_dict(self) -> dict:
        return {"disjoint": self.disjoint, "covers": self.covers,
                "touchesComplement": self.touches_complement}


def _first_gap_point(e: IntegerSet, lo: int, hi: int) -> int | None:
    """Some integer of ``[lo, hi]`` outside ``e``, or ``None``."""
    k = lo
    while k <= hi:
        if e.left_ray is not None and k <= e.left_ray:
            k = e.left_ray + 1
            continue
        if e.right_ray is not None and k >= e.right_ray:
            return None
        i = bisect.bisect_right(e._starts, k) - 1
        if i < 0 or e.runs[i].end < k:
            return k
        k = e.runs[i].end + 1
    return None


def verify_decomposition(e: IntegerSet, parts: Sequence[SymmetricInterval] | Decomposition) -> DecompositionReport:
    """Check disjointness, exact cover and 4-dilations reaching the complement.

    The cover is checked against ``e`` truncated to the ray stretches the
    parts actually reach.
    """
    parts = sorted(parts, key=lambda s: (s.start, s.end))
    failures = []
    disjoint = all(a.end < b.start for a, b in zip(parts, parts[1:]))
    if not disjoint:
        failures.append("overlap")
    target: list[tuple[int, int]] = [(r.start, r.end) for r in e.runs]
    if e.right_ray is not None:
        ends = [s.end for s in parts if s.end >= e.right_ray]
        if ends:
            target.append((e.right_ray, max(ends)))
    if e.left_ray is not None:
        starts = [s.start for s in parts if s.start <= e.left_ray]
        if starts:
            target.append((min(starts), e.left_ray))
    target.sort()
    got: list[list[int]] = []
    for s in parts:
        if got and s.start <= got[-1][1] + 1:
            got[-1][1] = max(got[-1][1], s.end)
        else:
            got.append([s.start, s.end])
    want: list[list[int]] = []
    for a, b in target:
        if want and a <= want[-1][1] + 1:
            want[-1][1] = max(want[-1][1], b)
        else:
            want.append([a, b])
    covers = got == want
    if got != want:
        failures.append("cover")
    touches = True
    for s in parts:
        big = dilate(s, 4)
        if _first_gap_point(e, big.start, big.end) is None:
            touches = False
            failures.append(f"S({s.center},{s.radius}) misses the complement")
    return DecompositionReport(disjoint, covers, touches, tuple(failures))
