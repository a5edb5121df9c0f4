"""Empirical constants for the strong, weak, good-lambda, Hedberg and good-set inequalities."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..core import (DomainError, ExponentProfile, FiniteSequence, ProfileError, ProfileKind,
                    SymmetricInterval, make_profile)
from ..farfield import MaximalFarField, ZProfile, maximal_profile, riesz_profile
from ..norms import lp_norm, morrey_norm, weighted_morrey_norm
from ..operators import maximal_values, riesz_fast_values
from ..trend import Verdict
from ..weights import Weight, constant_growth_profile
from .families import Case, TestFamily, generator
from .report import CaseResult, EmpiricalConstantReport, build_report

THREADS_ENV = "DRIESZ_THREADS"

STRONG_TAGS = ("t3.7(i)", "t3.1", "t1.1", "t3.10", "t3.11")
WEAK_TAGS = ("t3.7(ii)", "c3.5(ii)", "t3.8")
TAG_ALIASES = {"t3.7": "t3.7(i)", "c3.5": "c3.5(ii)"}


def canonical_tag(tag: str) -> str:
    return TAG_ALIASES.get(tag, tag)


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"{THREADS_ENV} must be a positive integer") from None
    if n < 1:
        raise DomainError(f"{THREADS_ENV} must be a positive integer")
    return n


def _map_cases(fn: Callable[[Case], CaseResult], cases: Sequence[Case]) -> list[CaseResult]:
    n = _threads()
    if n == 1:
        return [fn(c) for c in cases]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, cases))


def power_weight_range(profile: ExponentProfile) -> tuple[float, float]:
    """Open interval of exponents ``beta`` with ``max(|k|,1)**beta`` in A(p,q)."""
    return -1.0 / profile.q, 1.0 / profile.p_prime


def _gate_weight(profile: ExponentProfile, weight: Weight | None) -> None:
    if weight is None or weight.kind != "power":
        return
    lo, hi = power_weight_range(profile)
    if not lo < weight.beta < hi:
        raise ProfileError("-1/q<beta<1/p'", f"beta={weight.beta}, range ({lo}, {hi})")


def required_profile(tag: str, profile: ExponentProfile, weight: Weight | None) -> ExponentProfile:
    """Check a profile against a tag's hypotheses; returns the profile to use."""
    tag = canonical_tag(tag)
    if tag in ("t3.7(i)", "c3.5(i)"):
        if profile.kind is not ProfileKind.MORREY:
            raise ProfileError("Morrey scale 1<p<=q<1/alpha", f"got {profile.kind.value}")
        if weight is not None:
            raise ProfileError("unweighted", f"{tag} takes no weight")
        return profile
    if tag in ("t3.7(ii)", "c3.5(ii)"):
        if weight is not None:
            raise ProfileError("unweighted", f"{tag} takes no weight")
        return profile
    if tag in ("t3.1", "t1.1", "t3.8"):
        prof = make_profile(ProfileKind.SOBOLEV, profile.alpha, profile.p)
    elif tag in ("t3.10", "t3.11"):
        prof = make_profile(ProfileKind.WEIGHTED_MORREY, profile.alpha, profile.p)
    else:
        raise DomainError(f"unknown tag {tag!r}")
    if profile.kind is not ProfileKind.MORREY and not math.isclose(profile.q, prof.q, rel_tol=1e-12):
        raise ProfileError("1/q=1/p-alpha", f"q={profile.q}")
    _gate_weight(prof, weight)
    return prof


class _Outputs:
    """Lazily built operator outputs for one input."""

    def __init__(self, x: FiniteSequence, alpha: float):
        self.x, self.alpha = x, alpha
        self._m = self._i = None

    @property
    def maximal(self) -> ZProfile:
        if self._m is None:
            self._m = maximal_profile(self.x, self.alpha)
        return self._m

    @property
    def riesz(self) -> ZProfile:
        if self._i is None:
            self._i = riesz_profile(self.x, self.alpha)
        return self._i


def _ratio(case: Case, lhs: float, rhs: float) -> CaseResult:
    if rhs == 0.0:
        return CaseResult(case.case_id, case.size, lhs, rhs, float("nan"), "zero")
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return CaseResult(case.case_id, case.size, lhs, rhs, float("inf"), "divergent")
    return CaseResult(case.case_id, case.size, lhs, rhs, lhs / rhs)


def _scan_window(x: FiniteSequence) -> tuple[int, int]:
    """Exact-scan range for output Morrey suprema: the support plus half its span each side."""
    band = x.span // 2 + 1
    return x.start - band, x.end + band


def strong_case(tag: str, prof: ExponentProfile, weight: Weight | None, case: Case) -> CaseResult:
    x = case.x
    if x.is_zero:
        return CaseResult(case.case_id, case.size, 0.0, 0.0, float("nan"), "zero")
    out = _Outputs(x, prof.alpha)
    a, p, q = prof.alpha, prof.p, prof.q
    w = weight or Weight.constant(1.0)
    if tag == "t3.7(i)":
        lhs = out.maximal.morrey(prof.s, prof.t, window=_scan_window(x))[0]
        rhs = morrey_norm(x, p, q).value
    elif tag in ("t3.1", "t1.1"):
        z = out.maximal if tag == "t3.1" else out.riesz
        lhs = z.power_sum(q, w.pow(q)) ** (1.0 / q)
        rhs = lp_norm(x, p, w.pow(p))
    else:
        z = out.riesz if tag == "t3.10" else out.maximal
        wq = w.pow(q)
        lhs = z.morrey(q, prof.s, wq, wq, window=_scan_window(x))[0]
        rhs = weighted_morrey_norm(x, p, q, w.pow(p), wq).value
    return _ratio(case, lhs, rhs)


def weak_case(tag: str, prof: ExponentProfile, weight: Weight | None, case: Case) -> CaseResult:
    x = case.x
    if x.is_zero:
        return CaseResult(case.case_id, case.size, 0.0, 0.0, float("nan"), "zero")
    out = _Outputs(x, prof.alpha)
    if tag == "t3.8":
        w = weight or Weight.constant(1.0)
        lhs = out.maximal.weak_norm(prof.q, w.pow(prof.q))
        rhs = lp_norm(x, prof.p, w.pow(prof.p))
    else:
        z = out.maximal if tag == "t3.7(ii)" else out.riesz
        lhs = z.weak_norm(1.0 / (1.0 - prof.alpha))
        rhs = lp_norm(x, 1.0)
    return _ratio(case, lhs, rhs)


def _params(tag, prof, weight, family, caps) -> dict:
    d = {"tag": tag, "kind": prof.kind.value, "alpha": prof.alpha, "p": prof.p, "q": prof.q,
         "seed": family.seed, "caps": ",".join(str(c) for c in caps)}
    if prof.s is not None:
        d["s"] = prof.s
    if prof.t is not None:
        d["t"] = prof.t
    if weight is not None:
        d["weight"] = ",".join(f"{k}={v}" for k, v in weight.to_dict().items())
    return d


def _caps(family: TestFamily, caps) -> list[int]:
    return sorted(int(c) for c in (caps if caps is not None else family.sizes))


def strong_type_experiment(profile: ExponentProfile, weight: Weight | None, family: TestFamily,
                           tag: str, caps=None) -> EmpiricalConstantReport:
    tag = canonical_tag(tag)
    if tag not in STRONG_TAGS:
        raise DomainError(f"{tag!r} is not a strong-type tag")
    prof = required_profile(tag, profile, weight)
    caps = _caps(family, caps)
    cases = family.cases(weight, prof.p)
    results = _map_cases(lambda c: strong_case(tag, prof, weight, c), cases)
    return build_report(tag, _params(tag, prof, weight, family, caps), results, caps)


def weak_type_experiment(profile: ExponentProfile, weight: Weight | None, family: TestFamily,
                         tag: str, caps=None) -> EmpiricalConstantReport:
    tag = canonical_tag(tag)
    if tag not in WEAK_TAGS:
        raise DomainError(f"{tag!r} is not a weak-type tag")
    prof = required_profile(tag, profile, weight)
    caps = _caps(family, caps)
    cases = family.cases(weight, prof.p)
    results = _map_cases(lambda c: weak_case(tag, prof, weight, c), cases)
    return build_report(tag, _params(tag, prof, weight, family, caps), results, caps)


def good_lambda_experiment(alpha: float, q: float, weight: Weight | None, family: TestFamily,
                           caps=None) -> EmpiricalConstantReport:
    """Ratio of ``sum |I x|**q w`` to ``sum |M x|**q w`` over Z."""
    if not 0 < alpha < 1 or not q > 0:
        raise DomainError("good-lambda needs 0 < alpha < 1 and q > 0")
    caps = _caps(family, caps)
    w = weight or Weight.constant(1.0)

    def run(case: Case) -> CaseResult:
        if case.x.is_zero:
            return CaseResult(case.case_id, case.size, 0.0, 0.0, float("nan"), "zero")
        out = _Outputs(case.x, alpha)
        return _ratio(case, out.riesz.power_sum(q, w), out.maximal.power_sum(q, w))

    results = _map_cases(run, family.cases())
    params = {"tag": "l3.12", "alpha": alpha, "q": q, "seed": family.seed,
              "caps": ",".join(str(c) for c in caps)}
    if weight is not None:
        params["weight"] = ",".join(f"{k}={v}" for k, v in weight.to_dict().items())
    return build_report("l3.12", params, results, caps)


def hedberg_experiment(profile: ExponentProfile, family: TestFamily, caps=None) -> EmpiricalConstantReport:
    """``sup_k |I x(k)| / (M x(k))**(1 - alpha q) ||x||_{p,q}**(alpha q)`` with ``M`` the maximal average."""
    prof = required_profile("c3.5(i)", profile, None)
    caps = _caps(family, caps)
    a, q = prof.alpha, prof.q

    def run(case: Case) -> CaseResult:
        x = case.x
        if x.is_zero:
            return CaseResult(case.case_id, case.size, 0.0, 0.0, float("nan"), "zero")
        norm = morrey_norm(x, prof.p, q).value
        lo, hi = x.start - 2 * x.span - 2, x.end + 2 * x.span + 2
        iz = riesz_profile(x, a).values(lo, hi)
        avg = maximal_values(x, 0.0, x.start, x.end)
        far = MaximalFarField(x, 0.0)
        k = np.arange(lo, hi + 1)
        inside = (k >= x.start) & (k <= x.end)
        mavg = np.empty(k.size)
        mavg[inside] = avg
        mavg[~inside] = far(k[~inside])
        rhs = mavg ** (1.0 - a * q) * norm ** (a * q)
        r = np.abs(iz) / rhs
        i = int(np.argmax(r))
        return _ratio(case, float(np.abs(iz[i])), float(rhs[i]))

    results = _map_cases(run, family.cases())
    params = {"tag": "c3.5(i)", "alpha": a, "p": prof.p, "q": q, "seed": family.seed,
              "caps": ",".join(str(c) for c in caps)}
    return build_report("c3.5(i)", params, results, caps)


@dataclass(frozen=True)
class GoodSetResult:
    size: int
    ratio: float
    vacuous: bool
    a: float


def good_set_experiment(x: FiniteSequence, s: SymmetricInterval, b: float, c: float, alpha: float,
                        a: float | None = None) -> GoodSetResult:
    """``|E|`` and ``|E| / (|S| (c/b)**(1/(1-alpha)))`` for ``E = {I x > ab, M x <= ac}`` in ``S``.

    ``a`` defaults to the smallest value of ``I x`` on ``S``, the least level
    satisfying the hypothesis.
    """
    if b < 6 or c <= 0:
        raise DomainError("good-set needs b >= 6 and c > 0")
    if np.any(x.values < 0):
        raise DomainError("good-set needs a nonnegative input")
    ix = riesz_fast_values(x, alpha, s.start, s.end)
    mx = maximal_values(x, alpha, s.start, s.end)
    if a is None:
        a = float(ix.min())
    elif not np.any(ix <= a):
        return GoodSetResult(0, float("nan"), True, a)
    e = int(np.count_nonzero((ix > a * b) & (mx <= a * c)))
    return GoodSetResult(e, e / (s.cardinality * (c / b) ** (1.0 / (1.0 - alpha))), False, a)


def good_set_family_experiment(alpha: float, seed: int, cases: int = 200, size: int = 256,
                               bs=(6.0, 12.0, 24.0), cs=(0.25, 1.0, 4.0)) -> EmpiricalConstantReport:
    """Good-set ratios over sparse spiky inputs, random intervals and a grid of ``(b, c)``."""
    results = []
    for i in range(cases):
        rng = generator(seed, 7001, i)
        vals = np.where(rng.random(size) < 0.05, rng.pareto(1.5, size) + 0.1, 0.0)
        vals[0] = vals[-1] = 1.0
        x = FiniteSequence(vals)
        radius = int(rng.integers(1, size // 2))
        s = SymmetricInterval(int(rng.integers(-size // 4, size + size // 4)), radius)
        for b in bs:
            for c in cs:
                g = good_set_experiment(x, s, b, c, alpha)
                cid = f"spiky/{i}/b={b}/c={c}"
                status = "vacuous" if g.vacuous else "ok"
                rhs = s.cardinality * (c / b) ** (1.0 / (1.0 - alpha))
                results.append(CaseResult(cid, size, float(g.size), rhs, g.ratio, status))
    params = {"tag": "l3.16", "alpha": alpha, "seed": seed, "cases": cases}
    return build_report("l3.16", params, results, [size])


@dataclass(frozen=True)
class MembershipRow:
    beta: float
    constants: tuple
    verdicts: tuple
    agreement: bool
    consistent: bool
    guard_band: bool

    def to_dict(self) -> dict:
        return {"beta": self.beta, "constants": list(self.constants),
                "verdicts": [v.value for v in self.verdicts], "agreement": self.agreement,
                "consistent": self.consistent, "guardBand": self.guard_band}


def membership_phase_scan(betas: Sequence[float], profile: ExponentProfile,
                          caps: Sequence[int]) -> list[MembershipRow]:
    """Growth verdicts of the three equivalent membership formulations for power weights.

    A row is in the guard band when any formulation abstains (inconclusive);
    ``consistent`` means no formulation calls bounded while another calls
    growing.
    """
    if profile.kind is ProfileKind.MORREY:
        raise ProfileError("Sobolev scale", "membership scan needs 1/q = 1/p - alpha")
    p, q, pp = profile.p, profile.q, profile.p_prime
    rows = []
    for beta in betas:
        w = Weight.power(beta)
        profs = (constant_growth_profile(w, caps, p, q),
                 constant_growth_profile(w.pow(q), caps, 1.0 + q / pp),
                 constant_growth_profile(w.pow(-pp), caps, 1.0 + pp / q))
        verdicts = tuple(g.verdict for g in profs)
        vs = set(verdicts)
        rows.append(MembershipRow(float(beta), tuple(g.constants[-1] for g in profs), verdicts,
                                  len(vs) == 1,
                                  not {Verdict.BOUNDED, Verdict.GROWING} <= vs,
                                  Verdict.INCONCLUSIVE in vs))
    return rows
