import math

import pytest
from hypothesis import assume, given, settings, strategies as st

from smoothbound.bertrand import (
    RatioBound,
    model_derivative_floor,
    model_dlog_dy,
    model_dlog_dy_fd,
    model_doubling_lnx,
    model_log_ratio,
    model_ratio_bound,
    prime_in_interval,
    scan,
)
from smoothbound.errors import DomainError, OutOfRangeError
from smoothbound.iterlog import XYQuery, check_iterlog_domain, empirical_a, psi_model
from smoothbound.recursion import A_STAR


def test_prime_in_interval_examples(table):
    assert prime_in_interval(table, 10, 1.5) == 11
    assert prime_in_interval(table, 2, 1.4) is None
    assert prime_in_interval(table, 24, 1.25) == 29
    with pytest.raises(DomainError):
        prime_in_interval(table, 10, 1.0)
    with pytest.raises(OutOfRangeError):
        prime_in_interval(table, 2e6, 1.5)


@settings(max_examples=500, deadline=None)
@given(st.floats(2, 1e6), st.floats(1.001, 2.0))
def test_prime_in_interval_property(table, y, gamma):
    p = prime_in_interval(table, y, gamma)
    if p is not None:
        assert y < p < gamma * y
        assert table.is_prime(p)
    else:
        assert not any(table.is_prime(n) for n in range(math.floor(y) + 1, math.ceil(gamma * y)))


def test_scans(table):
    assert scan(table, 10, 10**6, 1.5).failures == []
    assert scan(table, 2, 10**6, 2.0).failures == []
    small = scan(table, 10, 100, 1.01)
    assert small.failures and small.failures[0] == 10


def test_scan_matches_pointwise(small_table):
    rep = scan(small_table, 2, 5000, 1.2)
    expected = [y for y in range(2, 5001) if prime_in_interval(small_table, y, 1.2) is None]
    assert rep.failures == expected and rep.checked == 4999


def test_scan_errors(small_table):
    with pytest.raises(OutOfRangeError):
        scan(small_table, 19_990, 20_000, 2.0)
    with pytest.raises(DomainError):
        scan(small_table, 10, 5, 1.5)


proof_domain = st.builds(
    lambda ly, s: XYQuery(math.exp(math.sqrt(ly) + s * (0.4 * ly - math.sqrt(ly))), ly),
    st.floats(40.0, 400.0),
    st.floats(0.02, 0.98),
)


@settings(max_examples=200, deadline=None)
@given(proof_domain)
def test_derivative_matches_finite_difference(q):
    a = A_STAR
    assert model_dlog_dy(q, a) == pytest.approx(model_dlog_dy_fd(q, a), rel=1e-5)


@settings(max_examples=200, deadline=None)
@given(proof_domain)
def test_derivative_above_floor(q):
    check_iterlog_domain(q, 0.5, 0.4)
    assert model_dlog_dy_fd(q, A_STAR) >= model_derivative_floor(q) * (1 - 1e-3)


def test_model_round_trip():
    q = XYQuery.from_xy(10**7, 200)
    assert psi_model(q, empirical_a(q, 648167)) == pytest.approx(math.log(648167), rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(30, 1e4), st.floats(1e3, 1e6))
def test_rigorous_ratio_bound(y, ln_x):
    assume(ln_x > math.e**math.e * math.log(1.6 * y))
    lr = model_log_ratio(ln_x, y, 1.6, A_STAR)
    assert lr >= model_ratio_bound(ln_x, y, 1.6, RatioBound.RIGOROUS)


def test_stated_ratio_bound_breaks_far_out():
    assert model_log_ratio(1e3, 1e3, 1.6, A_STAR) > model_ratio_bound(1e3, 1e3, 1.6, RatioBound.STATED)
    assert model_log_ratio(1e4, 1e4, 1.6, A_STAR) < model_ratio_bound(1e4, 1e4, 1.6, RatioBound.STATED)


def test_doubling_point():
    lnx = model_doubling_lnx(1e4, 1.6, A_STAR)
    assert lnx == pytest.approx(146.7, rel=2e-2)
    assert model_log_ratio(lnx, 1e4, 1.6, A_STAR) > math.log(2)
