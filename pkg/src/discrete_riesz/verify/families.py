"""Deterministic input families for the experiments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import DomainError, FiniteSequence
from ..weights import Weight

DEFAULT_SEED = 20240611
KINDS = ("deltas", "blocks", "randomSigned", "powerDecay", "adversarialExtremal")
_KIND_CODE = {k: i for i, k in enumerate(KINDS)}


def generator(seed: int, *keys: int) -> np.random.Generator:
    """Counter-based generator keyed by the seed and any integer path."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), *map(int, keys)])))


@dataclass(frozen=True)
class Case:
    case_id: str
    kind: str
    size: int
    x: FiniteSequence


@dataclass(frozen=True)
class TestFamily:
    """Inputs of each kind at each size.

    ``randomSigned`` draws ``draws`` sequences per size with the given
    ``density`` of nonzero entries; ``powerDecay`` is ``(k+1)**(-gamma)`` on
    ``[0, n)``; ``adversarialExtremal`` is ``w**(-p')`` on ``S(0, n//2)``.
    """

    __test__ = False

    kinds: tuple = KINDS
    sizes: tuple = (256, 512, 1024, 2048, 4096, 8192)
    seed: int = DEFAULT_SEED
    density: float = 0.25
    gamma: float = 0.5
    draws: int = 2
    nonnegative: bool = False

    def __post_init__(self):
        bad = [k for k in self.kinds if k not in _KIND_CODE]
        if bad:
            raise DomainError(f"unknown family kinds {bad}")
        if any(int(n) < 1 for n in self.sizes):
            raise DomainError("sizes must be positive")
        if not 0 < self.density <= 1:
            raise DomainError("density must lie in (0, 1]")

    def cases(self, weight: Weight | None = None, p: float | None = None) -> list[Case]:
        out = []
        for n in self.sizes:
            n = int(n)
            for kind in self.kinds:
                for rep, x in enumerate(self._make(kind, n, weight, p)):
                    out.append(Case(f"{kind}/n={n}/r={rep}", kind, n, x))
        return out

    def _make(self, kind: str, n: int, weight: Weight | None, p: float | None) -> list[FiniteSequence]:
        if kind == "deltas":
            return [FiniteSequence.delta(0) if n == 1 else FiniteSequence.from_mapping({0: 1.0, n - 1: 1.0})]
        if kind == "blocks":
            return [FiniteSequence(np.ones(n))]
        if kind == "powerDecay":
            return [FiniteSequence((np.arange(n) + 1.0) ** (-self.gamma))]
        if kind == "adversarialExtremal":
            half = n // 2
            k = np.arange(-half, half + 1)
            if weight is None or p is None:
                vals = np.ones(k.size)
            else:
                vals = weight(k) ** (-p / (p - 1.0))
            return [FiniteSequence(vals, -half)]
        seqs = []
        for rep in range(self.draws):
            rng = generator(self.seed, _KIND_CODE[kind], n, rep)
            mask = rng.random(n) < self.density
            mask[0] = mask[-1] = True
            vals = rng.uniform(0.05, 1.0, n)
            if not self.nonnegative:
                vals *= rng.choice((-1.0, 1.0), n)
            seqs.append(FiniteSequence(np.where(mask, vals, 0.0)))
        return seqs
