"""Discrete weights and truncated Muckenhoupt-type constants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .core import DomainError, IntervalRun, SymmetricInterval, dilate
from .trend import Verdict, classify_growth, final_growth


@dataclass(frozen=True)
class Weight:
    """A strictly positive sequence on Z.

    ``power`` weights are ``c * max(|k|, 1) ** beta``; ``table`` weights take
    ``values`` on ``[offset, offset + len(values))`` and ``outside`` elsewhere.
    """

    kind: str
    beta: float = 0.0
    c: float = 1.0
    offset: int = 0
    values: tuple = ()
    outside: float = 1.0

    def __post_init__(self):
        if self.kind not in ("power", "constant", "table"):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if not (np.isfinite(self.c) and self.c > 0):
            raise DomainError("weight scale must be positive and finite")
        if not np.isfinite(self.beta):
            raise DomainError("power exponent must be finite")
        if self.kind == "table":
            vals = np.asarray(self.values, dtype=float)
            if vals.size == 0:
                raise DomainError("table weight needs at least one value")
            if not (np.all(np.isfinite(vals)) and np.all(vals > 0)):
                raise DomainError("table weight values must be positive and finite")
            if not (np.isfinite(self.outside) and self.outside > 0):
                raise DomainError("table weight needs a positive outside value")

    @classmethod
    def power(cls, beta: float, c: float = 1.0) -> "Weight":
        return cls("power", beta=float(beta), c=float(c))

    @classmethod
    def constant(cls, c: float = 1.0) -> "Weight":
        return cls("constant", c=float(c))

    @classmethod
    def table(cls, values: Sequence[float], offset: int = 0, outside: float = 1.0) -> "Weight":
        return cls("table", offset=int(offset), values=tuple(float(v) for v in values),
                   outside=float(outside))

    @classmethod
    def reflected(cls, half_line: Sequence[float], outside: float | None = None) -> "Weight":
        """Extend a weight given on ``{0, 1, ..., n-1}`` evenly to Z.

        The result is ``k -> half_line[|k|]`` on ``|k| < n`` and ``outside``
        beyond (the last value when omitted).
        """
        half = np.asarray(half_line, dtype=float)
        if half.size == 0:
            raise DomainError("need at least one value")
        full = np.concatenate((half[:0:-1], half))
        out = float(half[-1]) if outside is None else float(outside)
        return cls.table(full, offset=-(half.size - 1), outside=out)

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant" or (self.kind == "power" and self.beta == 0.0)

    def __call__(self, k):
        """Evaluate at integers (scalar or array)."""
        scalar = np.isscalar(k)
        kk = np.asarray(k, dtype=np.int64)
        if self.kind == "constant":
            out = np.full(kk.shape, self.c)
        elif self.kind == "power":
            base = np.maximum(np.abs(kk), 1).astype(float)
            out = self.c * base ** self.beta
        else:
            vals = np.asarray(self.values)
            idx = kk - self.offset
            inside = (idx >= 0) & (idx < vals.size)
            out = np.full(kk.shape, self.outside)
            out[inside] = vals[idx[inside]]
        return float(out) if scalar else out

    def at_real(self, t):
        """Evaluate on real arguments; only meaningful outside any table block."""
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return np.full(t.shape, self.c)
        if self.kind == "power":
            return self.c * np.maximum(np.abs(t), 1.0) ** self.beta
        return np.full(t.shape, self.outside)

    def on(self, lo: int, hi: int) -> np.ndarray:
        return self(np.arange(lo, hi + 1))

    def tail_exponent(self) -> float:
        """Exponent ``g`` with ``w(k) = const * |k|**g`` for all large ``|k|``."""
        return self.beta if self.kind == "power" else 0.0

    def regular_beyond(self) -> int:
        """Radius beyond which ``at_real`` agrees with the weight."""
        if self.kind != "table":
            return 1
        return max(abs(self.offset), abs(self.offset + len(self.values) - 1)) + 1

    def pow(self, e: float) -> "Weight":
        """The weight ``w ** e``."""
        e = float(e)
        if self.kind == "constant":
            return Weight.constant(self.c ** e)
        if self.kind == "power":
            return Weight.power(self.beta * e, self.c ** e)
        vals = np.asarray(self.values) ** e
        return Weight.table(vals, self.offset, self.outside ** e)

    def scaled(self, factor: float) -> "Weight":
        factor = float(factor)
        if self.kind == "table":
            return Weight.table(np.asarray(self.values) * factor, self.offset, self.outside * factor)
        return Weight(self.kind, beta=self.beta, c=self.c * factor)

    def mass(self, run: IntervalRun) -> float:
        return float(np.sum(self.on(run.start, run.end)))

    def to_dict(self) -> dict:
        if self.kind == "power":
            d = {"kind": "power", "beta": self.beta}
            if self.c != 1.0:
                d["c"] = self.c
            return d
        if self.kind == "constant":
            return {"kind": "constant", "c": self.c}
        return {"kind": "table", "offset": self.offset, "values": list(self.values),
                "outside": self.outside}

    @classmethod
    def from_dict(cls, d: dict) -> "Weight":
        try:
            kind = d["kind"]
            if kind == "power":
                return cls.power(float(d["beta"]), float(d.get("c", 1.0)))
            if kind == "constant":
                return cls.constant(float(d["c"]))
            if kind == "table":
                return cls.table(d["values"], int(d.get("offset", 0)), float(d["outside"]))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed weight spec: {exc}") from None
        raise DomainError(f"unknown weight kind {d.get('kind')!r}")


UNIT = Weight.constant(1.0)


@dataclass(frozen=True)
class IntervalFamily:
    """Intervals inside ``[-half_width, half_width]`` with at most ``max_cardinality`` points.

    ``rule`` is ``"runs"`` (every run) or ``"symmetric"`` (odd-cardinality
    runs, i.e. the symmetric intervals).
    """

    half_width: int
    max_cardinality: int
    rule: str = "runs"

    def __post_init__(self):
        if self.half_width < 0 or self.max_cardinality < 1:
            raise DomainError("family needs half_width >= 0 and max_cardinality >= 1")
        if self.rule not in ("runs", "symmetric"):
            raise DomainError(f"unknown enumeration rule {self.rule!r}")

    @classmethod
    def for_cap(cls, cap: int, rule: str = "runs") -> "IntervalFamily":
        return cls(int(cap), int(cap), rule)

    @property
    def lo(self) -> int:
        return -self.half_width

    @property
    def hi(self) -> int:
        return self.half_width

    @property
    def width(self) -> int:
        return 2 * self.half_width + 1

    def cardinalities(self) -> range:
        top = min(self.max_cardinality, self.width)
        return range(1, top + 1, 2 if self.rule == "symmetric" else 1)

    def __iter__(self) -> Iterator[IntervalRun]:
        for c in self.cardinalities():
            for start in range(self.lo, self.hi - c + 2):
                yield IntervalRun(start, start + c - 1)

    def __len__(self) -> int:
        return sum(self.width - c + 1 for c in self.cardinalities())


@dataclass(frozen=True)
class ConstantEstimate:
    value: float
    witness: IntervalRun


def _mean(w: Weight, run: IntervalRun, e: float = 1.0) -> float:
    vals = w.on(run.start, run.end)
    if e != 1.0:
        vals = vals ** e
    return float(np.mean(vals))


def a1_ratio(w: Weight, run: IntervalRun) -> float:
    vals = w.on(run.start, run.end)
    return float(np.mean(vals) / np.min(vals))


def ap_ratio(w: Weight, run: IntervalRun, p: float) -> float:
    if p <= 1:
        raise DomainError("ap_ratio needs p > 1")
    return _mean(w, run) * _mean(w, run, -1.0 / (p - 1.0)) ** (p - 1.0)


def apq_ratio(w: Weight, run: IntervalRun, p: float, q: float) -> float:
    if p <= 1 or q <= 1:
        raise DomainError("apq_ratio needs p, q > 1")
    pp = p / (p - 1.0)
    return _mean(w, run, q) ** (1.0 / q) * _mean(w, run, -pp) ** (1.0 / pp)


def _sup_product(u: np.ndarray, v: np.ndarray, eu: float, ev: float,
                 fam: IntervalFamily) -> ConstantEstimate:
    """Sup over the family of ``avg(u)**eu * avg(v)**ev``.

    Window sums are grown one cardinality at a time by appending a single
    term, so every sum is a sum of positive terms with no subtraction.
    """
    width = fam.width
    su = np.zeros(width)
    sv = np.zeros(width)
    best, arg = -np.inf, None
    wanted = set(fam.cardinalities())
    for c in range(1, max(wanted) + 1):
        m = width - c + 1
        su = su[:m] + u[c - 1: c - 1 + m]
        sv = sv[:m] + v[c - 1: c - 1 + m]
        if c not in wanted:
            continue
        r = (su / c) ** eu * (sv / c) ** ev
        i = int(np.argmax(r))
        if r[i] > best:
            best, arg = float(r[i]), IntervalRun(fam.lo + i, fam.lo + i + c - 1)
    return ConstantEstimate(best, arg)


def _sup_a1(w: np.ndarray, fam: IntervalFamily) -> ConstantEstimate:
    width = fam.width
    s = np.zeros(width)
    mn = np.full(width, np.inf)
    best, arg = -np.inf, None
    wanted = set(fam.cardinalities())
    for c in range(1, max(wanted) + 1):
        m = width - c + 1
        tail = w[c - 1: c - 1 + m]
        s = s[:m] + tail
        mn = np.minimum(mn[:m], tail)
        if c not in wanted:
            continue
        r = s / c / mn
        i = int(np.argmax(r))
        if r[i] > best:
            best, arg = float(r[i]), IntervalRun(fam.lo + i, fam.lo + i + c - 1)
    return ConstantEstimate(best, arg)


def ap_constant(w: Weight, fam: IntervalFamily, p: float) -> ConstantEstimate:
    """Truncated A_p constant (A_1 when ``p == 1``) with an attaining interval."""
    if p < 1:
        raise DomainError("ap_constant needs p >= 1")
    vals = w.on(fam.lo, fam.hi)
    if p == 1:
        return _sup_a1(vals, fam)
    return _sup_product(vals, vals ** (-1.0 / (p - 1.0)), 1.0, p - 1.0, fam)


def apq_constant(w: Weight, fam: IntervalFamily, p: float, q: float) -> ConstantEstimate:
    """Truncated A(p,q) constant with an attaining interval."""
    if p <= 1 or q <= 1:
        raise DomainError("apq_constant needs p, q > 1")
    pp = p / (p - 1.0)
    vals = w.on(fam.lo, fam.hi)
    return _sup_product(vals ** q, vals ** (-pp), 1.0 / q, 1.0 / pp, fam)


def doubling_ratios(w: Weight, intervals: Iterable[SymmetricInterval],
                    factor: int) -> list[tuple[SymmetricInterval, float]]:
    """``w(factor S) / w(S)`` for each interval, using the singleton dilation rule."""
    out = []
    for s in intervals:
        big = dilate(s, factor)
        out.append((s, w.mass(big.as_run()) / w.mass(s.as_run())))
    return out


def reverse_doubling_constant(w: Weight,
                              intervals: Iterable[SymmetricInterval]) -> tuple[float, SymmetricInterval]:
    """Smallest ``w(2S) / w(S)`` over the intervals, with its minimizer."""
    ratios = doubling_ratios(w, intervals, 2)
    if not ratios:
        raise DomainError("empty interval family")
    s, r = min(ratios, key=lambda t: t[1])
    return r, s


class SamplerExhausted(RuntimeError):
    """A subset sampler produced no subsets for some interval."""


@dataclass(frozen=True)
class SubsetSampler:
    """Which subsets of an interval to test.

    ``runs`` enumerates every sub-run; ``densities`` draws ``draws`` seeded
    random subsets at each density; ``exhaustive`` enumerates every subset
    when the interval has at most ``exhaustive_limit`` points.
    """

    runs: bool = True
    densities: tuple = (0.125, 0.25, 0.5)
    draws: int = 4
    exhaustive: bool = False
    exhaustive_limit: int = 16
    seed: int = 0

    def samples(self, masses: np.ndarray, j_index: int) -> tuple[np.ndarray, np.ndarray]:
        """Return (subset sizes, subset masses) for one interval's masses."""
        n = masses.size
        sizes, sums = [], []
        if self.runs:
            s = np.zeros(n)
            for c in range(1, n + 1):
                s = s[: n - c + 1] + masses[c - 1:]
                sizes.append(np.full(s.size, c))
                sums.append(s.copy())
        if self.densities and self.draws > 0:
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([self.seed, j_index, n])))
            for d in self.densities:
                k = max(1, int(round(d * n)))
                for _ in range(self.draws):
                    pick = rng.choice(n, size=k, replace=False)
                    sizes.append(np.array([k]))
                    sums.append(np.array([masses[pick].sum()]))
        if self.exhaustive and n <= self.exhaustive_limit:
            bits = np.arange(1, 1 << n, dtype=np.int64)
            member = ((bits[:, None] >> np.arange(n)) & 1).astype(bool)
            sizes.append(member.sum(axis=1))
            sums.append(member.astype(float) @ masses)
        if not sizes:
            raise SamplerExhausted(f"no subsets sampled for interval #{j_index} of size {n}")
        return np.concatenate(sizes), np.concatenate(sums)


@dataclass(frozen=True)
class AInfinityReport:
    epsilon: float
    delta_hat: float
    samples: int
    violations: int
    densities: np.ndarray = field(repr=False)
    mass_ratios: np.ndarray = field(repr=False)


def a_infinity_eps_delta(w: Weight, intervals: Iterable[IntervalRun], epsilon: float,
                         sampler: SubsetSampler = SubsetSampler()) -> AInfinityReport:
    """Empirical largest density below which sampled subsets carry at most ``epsilon`` of the mass."""
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    dens, ratios = [], []
    for j, run in enumerate(intervals):
        masses = w.on(run.start, run.end)
        total = masses.sum()
        sizes, sums = sampler.samples(masses, j)
        dens.append(sizes / run.cardinality)
        ratios.append(sums / total)
    if not dens:
        raise SamplerExhausted("empty interval family")
    dens = np.concatenate(dens)
    ratios = np.concatenate(ratios)
    bad = ratios > epsilon
    if bad.any():
        limit = dens[bad].min()
        ok = dens[dens < limit]
        delta = float(ok.max()) if ok.size else 0.0
    else:
        delta = float(dens.max())
    return AInfinityReport(epsilon, delta, int(dens.size), int(bad.sum()), dens, ratios)


def exhaustive_min_violating_density(masses: np.ndarray, epsilon: float) -> float | None:
    """Smallest density of any subset with mass share above ``epsilon``.

    The heaviest subset of each size is the top-k sorted prefix, so this
    covers every subset without enumerating them.
    """
    total = masses.sum()
    top = np.cumsum(np.sort(masses)[::-1]) / total
    over = np.flatnonzero(top > epsilon)
    return None if over.size == 0 else (over[0] + 1) / masses.size


def subset_enumeration_min_violating_density(masses: Sequence[float], epsilon: float) -> float | None:
    """Same quantity as :func:`exhaustive_min_violating_density` by brute force."""
    n = len(masses)
    total = sum(masses)
    best = None
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            if sum(masses[i] for i in combo) / total > epsilon:
                best = k / n if best is None else min(best, k / n)
        if best is not None:
            return best
    return best


@dataclass(frozen=True)
class GrowthProfile:
    caps: tuple
    constants: tuple
    witnesses: tuple
    verdict: Verdict
    growth: float

    def csv_rows(self) -> list[tuple]:
        return [(cap, val, wit.start, wit.end)
                for cap, val, wit in zip(self.caps, self.constants, self.witnesses)]


def constant_growth_profile(w: Weight, caps: Sequence[int], p: float,
                            q: float | None = None) -> GrowthProfile:
    """Truncated A_p (or A(p,q) when ``q`` is given) constants at increasing caps."""
    caps = [int(c) for c in caps]
    if any(b <= a for a, b in zip(caps, caps[1:])):
        raise DomainError("caps must be strictly increasing")
    vals, wits = [], []
    for cap in caps:
        fam = IntervalFamily.for_cap(cap)
        est = ap_constant(w, fam, p) if q is None else apq_constant(w, fam, p, q)
        vals.append(est.value)
        wits.append(est.witness)
    if len(vals) >= 2:
        verdict, growth = classify_growth(vals), final_growth(vals)
    else:
        verdict, growth = Verdict.INCONCLUSIVE, float("nan")
    return GrowthProfile(tuple(caps), tuple(vals), tuple(wits), verdict, growth)


def duality_extremizer(w: Weight, run: IntervalRun, p: float) -> np.ndarray:
    """``w ** (-1/(p-1))`` on the run, the maximizer of :func:`duality_ratio`."""
    return w.on(run.start, run.end) ** (-1.0 / (p - 1.0))


def duality_ratio(w: Weight, run: IntervalRun, p: float, x: np.ndarray) -> float:
    """Average of ``|x|`` over the run divided by its weighted p-mean."""
    wv = w.on(run.start, run.end)
    ax = np.abs(np.asarray(x, dtype=float))
    num = ax.mean()
    den = (np.sum(ax ** p * wv) / wv.sum()) ** (1.0 / p)
    return float(num / den)
