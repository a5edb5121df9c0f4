import math

import numpy as np
import pytest

from discrete_riesz.core import FiniteSequence
from discrete_riesz.farfield import BUFFER, maximal_profile, riesz_profile
from discrete_riesz.operators import maximal_values, riesz_fast_values
from discrete_riesz.verify.families import generator
from discrete_riesz.weights import Weight


def spiky(n, seed):
    rng = generator(seed, 5, n)
    v = np.where(rng.random(n) < 0.3, rng.uniform(0.05, 1, n) * rng.choice((-1, 1), n), 0.0)
    v[0] = v[-1] = 1.0
    return FiniteSequence(v, offset=int(rng.integers(-50, 50)))


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
def test_riesz_profile_values_match_direct(alpha):
    x = spiky(40, 1)
    z = riesz_profile(x, alpha)
    lo, hi = x.start - 3 * BUFFER, x.end + 3 * BUFFER
    want = riesz_fast_values(x, alpha, lo, hi)
    got = z.values(lo, hi)
    scale = riesz_fast_values(x.abs(), alpha, lo, hi)
    assert np.max(np.abs(got - want) / scale) < 1e-12


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.7])
def test_maximal_profile_values_match_direct(alpha):
    x = spiky(30, 2)
    z = maximal_profile(x, alpha)
    lo, hi = x.start - 5000, x.end + 5000
    np.testing.assert_allclose(z.values(lo, hi), maximal_values(x, alpha, lo, hi), rtol=1e-13)


def dense_power_sum(values, r, w, lo):
    k = np.arange(lo, lo + values.size)
    return math.fsum(np.abs(values) ** r * w(k))


@pytest.mark.parametrize("which", ["riesz", "maximal"])
@pytest.mark.parametrize("beta", [0.0, 0.5])
def test_power_sum_matches_dense_sum(which, beta):
    # decay exponent (alpha-1) r + beta = -2.5 - ...: dense window of 2^20 leaves < 1e-9
    x = spiky(16, 3)
    alpha, r = 0.25, 4.0
    w = Weight.power(beta)
    z = (riesz_profile if which == "riesz" else maximal_profile)(x, alpha)
    half = 1 << 20
    lo = x.start - half
    if which == "riesz":
        vals = riesz_fast_values(x, alpha, lo, x.end + half)
    else:
        vals = z.values(lo, x.end + half)
    want = dense_power_sum(vals, r, w, lo)
    assert z.power_sum(r, w) == pytest.approx(want, rel=1e-8)


def test_power_sum_divergent_is_inf():
    z = riesz_profile(FiniteSequence.delta(0), 0.5)
    assert math.isinf(z.power_sum(2.0))


@pytest.mark.parametrize("alpha", [0.2, 0.5])
def test_weak_norm_of_delta_potential(alpha):
    # I delta = |k|**(alpha-1); every level n**(alpha-1) gives 2**(1-alpha)
    z = riesz_profile(FiniteSequence.delta(0), alpha)
    assert z.weak_norm(1.0 / (1.0 - alpha)) == pytest.approx(2 ** (1 - alpha), rel=1e-9)


def test_weak_norm_convergent_case_matches_dense():
    x = spiky(12, 4)
    alpha, r = 0.25, 2.0
    z = riesz_profile(x, alpha)
    half = 1 << 18
    vals = np.abs(riesz_fast_values(x, alpha, x.start - half, x.end + half))
    levels = np.sort(vals[vals > 0])[::-1]
    dense = np.max(levels * np.arange(1, levels.size + 1) ** (1 / r))
    assert z.weak_norm(r) == pytest.approx(dense, rel=1e-9)


def test_morrey_of_profile_matches_window_brute_force():
    x = spiky(10, 6).abs()
    alpha, p, q = 0.3, 2.0, 3.0
    z = maximal_profile(x, alpha)
    got, wit = z.morrey(p, q, window=(x.start - 20, x.end + 20))
    vals = z.values(x.start - 400, x.end + 400)
    lo = x.start - 400
    best = 0.0
    for rad in range(0, 200):
        for m in range(x.start - 40, x.end + 41):
            seg = vals[m - rad - lo: m + rad - lo + 1]
            best = max(best, (2 * rad + 1) ** (1 / q - 1 / p) * math.fsum(seg ** p) ** (1 / p))
    assert got >= best * (1 - 1e-12)
    vseg = z.values(wit.start, wit.end)
    assert got == pytest.approx((2 * wit.radius + 1) ** (1 / q - 1 / p) * math.fsum(np.abs(vseg) ** p) ** (1 / p),
                                rel=1e-9)
