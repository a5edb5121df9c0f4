"""Timing of the direct and transform-based potential evaluations."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .core import FiniteSequence
from .operators import CapacityError, DEFAULT_MAX_FFT_LENGTH, riesz_fast_values, riesz_naive_values
from .verify.families import generator

NAIVE_LIMIT = 1 << 15
AGREEMENT_TOL = 1e-10


@dataclass(frozen=True)
class BenchRow:
    n: int
    naive_ms: float | None
    fast_ms: float | None
    max_rel_dev: float | None
    error: str | None = None

    @property
    def speedup(self) -> float | None:
        if self.naive_ms is None or self.fast_ms is None or self.fast_ms == 0:
            return None
        return self.naive_ms / self.fast_ms


def _median_ms(fn, reps: int):
    times, out = [], None
    for _ in range(reps):
        t = time.perf_counter()
        out = fn()
        times.append((time.perf_counter() - t) * 1e3)
    return statistics.median(times), out


def bench_input(n: int, seed: int) -> FiniteSequence:
    rng = generator(seed, 9001, n)
    vals = rng.uniform(0.05, 1.0, n) * rng.choice((-1.0, 1.0), n)
    return FiniteSequence(vals)


def run_bench(sizes, alpha: float, reps: int = 3, seed: int = 0,
              max_length: int = DEFAULT_MAX_FFT_LENGTH) -> list[BenchRow]:
    """Median wall times on the support; the direct sum runs only up to ``NAIVE_LIMIT``."""
    rows = []
    for n in sizes:
        x = bench_input(int(n), seed)
        lo, hi = x.start, x.end
        try:
            fast_ms, fast = _median_ms(lambda: riesz_fast_values(x, alpha, lo, hi, max_length), reps)
        except CapacityError as exc:
            rows.append(BenchRow(int(n), None, None, None, str(exc)))
            continue
        naive_ms = dev = None
        if n <= NAIVE_LIMIT:
            naive_ms, naive = _median_ms(lambda: riesz_naive_values(x, alpha, lo, hi), reps)
            dev = float(np.max(np.abs(fast - naive) / np.abs(naive)))
        rows.append(BenchRow(int(n), naive_ms, fast_ms, dev))
    return rows


def bench_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "naive_ms", "fast_ms", "speedup"])
    for r in rows:
        if r.error is not None:
            w.writerow([r.n, "skip", "error", "n/a"])
            continue
        w.writerow([r.n,
                    "skip" if r.naive_ms is None else f"{r.naive_ms:.3f}",
                    f"{r.fast_ms:.3f}",
                    "n/a" if r.speedup is None else f"{r.speedup:.2f}"])
    return buf.getvalue()
