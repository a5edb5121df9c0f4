import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discrete_riesz.core import DomainError, IntervalRun, SymmetricInterval
from discrete_riesz.trend import Verdict, classify_growth, final_growth
from discrete_riesz.weights import (IntervalFamily, SamplerExhausted, SubsetSampler, Weight, a1_ratio,
                                    a_infinity_eps_delta, ap_constant, ap_ratio, apq_constant, apq_ratio,
                                    constant_growth_profile, doubling_ratios, duality_extremizer,
                                    duality_ratio, exhaustive_min_violating_density,
                                    reverse_doubling_constant, subset_enumeration_min_violating_density)

from oracles import a2_ratio_exact

runs = st.builds(lambda a, n: IntervalRun(a, a + n), st.integers(-30, 30), st.integers(0, 12))
betas = st.floats(-0.9, 1.5)


def test_power_weight_is_regularized_at_origin():
    w = Weight.power(-0.5)
    assert w(0) == 1.0 and w(-4) == 0.5


def test_table_and_reflected():
    t = Weight.table([2.0, 3.0], offset=5, outside=1.5)
    assert t.on(4, 7).tolist() == [1.5, 2.0, 3.0, 1.5]
    r = Weight.reflected([1.0, 2.0, 4.0])
    assert r.on(-3, 3).tolist() == [4.0, 4.0, 2.0, 1.0, 2.0, 4.0, 4.0]


def test_weight_rejects_nonpositive():
    with pytest.raises(DomainError):
        Weight.constant(0.0)
    with pytest.raises(DomainError):
        Weight.table([1.0, -1.0])


@pytest.mark.parametrize("w", [Weight.power(0.3), Weight.constant(2.5), Weight.table([1, 2, 3], -1, 0.5)])
def test_weight_dict_round_trip(w):
    assert Weight.from_dict(w.to_dict()) == w


def test_ratio_examples():
    one, p1 = Weight.constant(1.0), Weight.power(1.0)
    j12 = IntervalRun(1, 2)
    assert a1_ratio(one, IntervalRun(-3, 3)) == 1.0
    assert a1_ratio(p1, j12) == 1.5
    assert a1_ratio(Weight.constant(7.0), IntervalRun(-3, 3)) == pytest.approx(1.0, rel=1e-15)
    assert ap_ratio(p1, j12, 2.0) == 1.125
    want = ((1 + 2 ** 0.4) / 2) ** 0.25 * ((1 + 2 ** -0.2) / 2) ** 0.5
    assert apq_ratio(Weight.power(0.1), j12, 2.0, 4.0) == pytest.approx(want, rel=1e-14)
    assert apq_ratio(Weight.constant(3.0), j12, 2.0, 4.0) == pytest.approx(1.0, rel=1e-14)


@given(st.integers(1, 5), runs)
def test_a2_ratio_exact_arithmetic(beta, run):
    w = Weight.power(beta)
    exact = a2_ratio_exact(w.on(run.start, run.end))
    assert ap_ratio(w, run, 2.0) == pytest.approx(float(exact), rel=1e-13)


@given(betas, runs, st.floats(1.05, 6), st.floats(1.05, 6))
def test_ap_ratio_nonincreasing_in_p(beta, run, p, r):
    lo, hi = sorted((p, r))
    w = Weight.power(beta)
    assert ap_ratio(w, run, hi) <= ap_ratio(w, run, lo) * (1 + 1e-12)


@given(betas, runs, st.floats(1.05, 6))
def test_ap_ratio_at_least_one(beta, run, p):
    assert ap_ratio(Weight.power(beta), run, p) >= 1 - 1e-12


def brute_constant(w, fam, ratio):
    return max(ratio(w, run) for run in fam)


@pytest.mark.parametrize("beta", [-0.6, 0.5, 1.0, 2.0])
def test_ap_constant_matches_enumeration(beta):
    w, fam = Weight.power(beta), IntervalFamily(8, 5)
    est = ap_constant(w, fam, 2.0)
    assert est.value == pytest.approx(brute_constant(w, fam, lambda w, j: ap_ratio(w, j, 2.0)), rel=1e-12)
    assert ap_ratio(w, est.witness, 2.0) == pytest.approx(est.value, rel=1e-12)
    a1 = ap_constant(w, fam, 1.0)
    assert a1.value == pytest.approx(brute_constant(w, fam, a1_ratio), rel=1e-12)
    apq = apq_constant(w, fam, 2.0, 4.0)
    assert apq.value == pytest.approx(brute_constant(w, fam, lambda w, j: apq_ratio(w, j, 2.0, 4.0)), rel=1e-12)


def test_ap_constant_examples():
    fam = IntervalFamily(8, 5)
    assert ap_constant(Weight.constant(1.0), fam, 2.0).value == 1.0
    assert ap_constant(Weight.power(1.0), fam, 2.0).value >= 1.125
    w = Weight.power(0.5)
    assert ap_constant(w, fam, 3.0).value <= ap_constant(w, fam, 2.0).value


def test_symmetric_rule_uses_odd_cardinalities():
    fam = IntervalFamily(4, 5, "symmetric")
    assert {r.cardinality for r in fam} == {1, 3, 5}
    assert len(fam) == len(list(fam))


def test_doubling_examples():
    one, p1 = Weight.constant(1.0), Weight.power(1.0)
    (_, r), = doubling_ratios(one, [SymmetricInterval(0, 2)], 2)
    assert r == pytest.approx(9 / 5)
    (_, r), = doubling_ratios(one, [SymmetricInterval(0, 0)], 2)
    assert r == 3.0
    # 2 S(0,1) = {-2..2}: (2+1+1+1+2)/(1+1+1)
    (_, r), = doubling_ratios(p1, [SymmetricInterval(0, 1)], 2)
    assert r == pytest.approx(7 / 3)


def test_reverse_doubling_minimum():
    fam = [SymmetricInterval(0, n) for n in range(0, 101)]
    for w in (Weight.constant(1.0), Weight.constant(4.0)):
        val, wit = reverse_doubling_constant(w, fam)
        # (4N+1)/(2N+1) is smallest at N = 1 among N >= 1; the singleton gives 3
        assert val == pytest.approx(5 / 3) and wit == SymmetricInterval(0, 1)
    ratios = [r for _, r in doubling_ratios(Weight.constant(1.0), fam[1:], 2)]
    assert all(b > a for a, b in zip(ratios, ratios[1:])) and ratios[-1] < 2


def test_a_infinity_examples():
    fam = [IntervalRun(0, 7), IntervalRun(-5, 2)]
    rep = a_infinity_eps_delta(Weight.constant(1.0), fam, 0.5)
    assert rep.delta_hat == 0.5
    rep_c = a_infinity_eps_delta(Weight.constant(9.0), fam, 0.5)
    assert rep_c.delta_hat == rep.delta_hat and rep_c.violations == rep.violations
    w = Weight.power(2.0)
    assert w.on(7, 8).sum() / w.on(1, 8).sum() == pytest.approx(113 / 204)
    assert a_infinity_eps_delta(w, [IntervalRun(1, 8)], 0.5).delta_hat < 0.25


def test_sampler_exhausted():
    with pytest.raises(SamplerExhausted):
        a_infinity_eps_delta(Weight.constant(1.0), [IntervalRun(0, 3)], 0.5,
                             SubsetSampler(runs=False, densities=()))


@settings(max_examples=40)
@given(st.lists(st.floats(0.1, 10), min_size=1, max_size=10), st.floats(0.05, 0.95))
def test_top_k_density_matches_subset_enumeration(masses, eps):
    a = exhaustive_min_violating_density(np.array(masses), eps)
    b = subset_enumeration_min_violating_density(masses, eps)
    assert a == b


def test_exhaustive_sampler_agrees_with_enumeration():
    w = Weight.power(1.5)
    run = IntervalRun(1, 10)
    rep = a_infinity_eps_delta(w, [run], 0.4, SubsetSampler(runs=False, densities=(), exhaustive=True))
    masses = w.on(1, 10)
    first_bad = subset_enumeration_min_violating_density(list(masses), 0.4)
    assert rep.delta_hat == pytest.approx(first_bad - 0.1)


def test_duality_extremizer_attains_ap_ratio():
    for beta, p in ((0.5, 2.0), (-0.3, 3.0), (1.2, 1.5)):
        w, run = Weight.power(beta), IntervalRun(-4, 9)
        x = duality_extremizer(w, run, p)
        got = duality_ratio(w, run, p, x)
        assert got == pytest.approx(ap_ratio(w, run, p) ** (1 / p), rel=1e-12)
        rng = np.random.default_rng(0)
        for _ in range(20):
            assert duality_ratio(w, run, p, rng.random(run.cardinality)) <= got * (1 + 1e-12)


def test_growth_profiles():
    caps = [2 ** j for j in range(6, 13)]
    one = constant_growth_profile(Weight.constant(1.0), caps, 2.0)
    assert all(c == pytest.approx(1.0, abs=1e-12) for c in one.constants)
    ok = constant_growth_profile(Weight.power(0.5), caps, 2.0)
    assert ok.verdict is Verdict.BOUNDED
    assert all(b >= a for a, b in zip(ok.constants, ok.constants[1:]))
    bad = constant_growth_profile(Weight.power(1.5), caps, 2.0)
    assert bad.verdict is Verdict.GROWING
    assert bad.csv_rows()[0][0] == 64
    with pytest.raises(DomainError):
        constant_growth_profile(Weight.constant(1.0), [8, 8], 2.0)


def test_trend_thresholds():
    assert classify_growth([1.0, 1.049]) is Verdict.BOUNDED
    assert classify_growth([1.0, 1.05]) is Verdict.INCONCLUSIVE
    assert classify_growth([1.0, 1.25]) is Verdict.GROWING
    assert final_growth([2.0, 3.0]) == 0.5
