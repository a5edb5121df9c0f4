import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from discrete_riesz.core import (DomainError, FiniteSequence, IntervalRun, ProfileError,
                                 ProfileKind, SymmetricInterval, dilate, left_dilate, make_profile)

values = st.lists(st.floats(-1e3, 1e3, allow_nan=False), max_size=30)


def test_trims_zeros_and_shifts_offset():
    x = FiniteSequence([0, 0, 2, 0, 3, 0], offset=-4)
    assert x.start == -2 and x.end == 0
    assert x.values.tolist() == [2, 0, 3]
    assert x(-2) == 2 and x(7) == 0


def test_zero_sequence():
    z = FiniteSequence([0.0, 0.0], offset=5)
    assert z.is_zero and z.support_run() is None and z == FiniteSequence()


def test_rejects_nonfinite():
    with pytest.raises(DomainError):
        FiniteSequence([1.0, math.inf])


def test_values_are_read_only():
    x = FiniteSequence([1.0, 2.0])
    with pytest.raises(ValueError):
        x.values[0] = 5.0


def test_from_mapping_fills_gaps():
    x = FiniteSequence.from_mapping({3: 1.0, 6: -2.0})
    assert x.on(2, 7).tolist() == [0, 1, 0, 0, -2, 0]


@given(values, st.integers(-50, 50), values, st.integers(-50, 50))
def test_addition_matches_pointwise(a, ia, b, ib):
    x, y = FiniteSequence(a, ia), FiniteSequence(b, ib)
    s = x + y
    for k in range(-60, 120):
        assert s(k) == x(k) + y(k)


def test_forward_difference():
    x = FiniteSequence.delta(0)
    d = x.forward_difference()
    assert d(-1) == 1 and d(0) == -1 and d(1) == 0


def test_dilate_examples():
    assert dilate(SymmetricInterval(0, 0), 4).as_run() == IntervalRun(-3, 3)
    assert dilate(SymmetricInterval(5, 3), 2).as_run() == IntervalRun(-1, 11)
    s = SymmetricInterval(7, 2)
    assert dilate(s, 1) == s


def test_left_dilate_examples():
    assert left_dilate(IntervalRun(10, 10), 6) == IntervalRun(5, 10)
    assert left_dilate(IntervalRun(1, 4), 3) == IntervalRun(-7, 4)
    assert left_dilate(IntervalRun(1, 4), 1) == IntervalRun(1, 4)


@given(st.integers(-100, 100), st.integers(0, 100), st.integers(1, 9))
def test_left_dilate_keeps_right_end(a, length, n):
    run = IntervalRun(a, a + length)
    big = left_dilate(run, n)
    assert big.end == run.end and big.cardinality == n * run.cardinality


def test_profiles():
    s = make_profile(ProfileKind.SOBOLEV, 0.25, 2.0)
    assert s.q == pytest.approx(4.0) and s.p_prime == pytest.approx(2.0)
    m = make_profile(ProfileKind.MORREY, 0.25, 2.0, 3.0)
    assert m.s == pytest.approx(8.0) and m.t == pytest.approx(12.0)
    with pytest.raises(ProfileError) as exc:
        make_profile(ProfileKind.WEIGHTED_MORREY, 0.25, 2.0)
    assert exc.value.constraint == "q<2p"


@pytest.mark.parametrize("kind,alpha,p,q,constraint", [
    ("SobolevScale", 0.5, 2.0, None, "p<1/alpha"),
    ("SobolevScale", 1.0, 2.0, None, "0<alpha<1"),
    ("SobolevScale", 0.2, 1.0, None, "1<p"),
    ("MorreyScale", 0.2, 3.0, 2.0, "p<=q"),
    ("MorreyScale", 0.25, 2.0, 4.0, "q<1/alpha"),
    ("SobolevScale", 0.25, 2.0, 3.0, "1/q=1/p-alpha"),
])
def test_profile_constraints(kind, alpha, p, q, constraint):
    with pytest.raises(ProfileError) as exc:
        make_profile(kind, alpha, p, q)
    assert exc.value.constraint == constraint


@given(st.floats(0.01, 0.99), st.floats(1.001, 50))
def test_accepted_sobolev_profiles_are_consistent(alpha, p):
    try:
        prof = make_profile(ProfileKind.SOBOLEV, alpha, p)
    except ProfileError:
        assert alpha * p >= 1
        return
    assert prof.q > prof.p
    # alpha q < 1 is equivalent to 2 alpha p < 1 on this scale
    if 2 * alpha * p < 1 - 1e-9:
        assert alpha * prof.q < 1
    elif 2 * alpha * p > 1 + 1e-9:
        assert alpha * prof.q > 1
