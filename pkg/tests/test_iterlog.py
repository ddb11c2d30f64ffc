import math

import pytest
from hypothesis import given, settings, strategies as st

from smoothbound.errors import DomainError
from smoothbound.iterlog import (
    XYQuery,
    check_iterlog_domain,
    check_lower_domain,
    check_upper_domain,
    empirical_a,
    generalized_bound,
    iter_ln,
    iterlog_estimates,
    ln_psi_lower_bound,
    ln_psi_upper_bound,
    lower_forms,
    psi_model,
)
from smoothbound.smooth import psi

# every iterated log up to ln4 x and ln3 y defined
queries = st.builds(
    lambda ly, ratio: XYQuery(max(ly * ratio, math.e**math.e + 0.01), ly),
    st.floats(math.e + 0.01, 80.0),
    st.floats(1.05, 200.0),
)


def test_iter_ln_values():
    assert iter_ln(2, math.e**math.e) == pytest.approx(1.0, abs=1e-15)
    assert iter_ln(1, math.e) == 1.0
    assert iter_ln(0, 5.0) == 5.0
    assert iter_ln(4, 1e6) == pytest.approx(-0.035230849712728406, abs=1e-15)


def test_iter_ln_names_failing_level():
    with pytest.raises(DomainError, match=r"ln\^\(5\)"):
        iter_ln(5, 1e6)


def test_query_validation():
    with pytest.raises(DomainError):
        XYQuery(2.0, 2.0)
    with pytest.raises(DomainError):
        XYQuery(10.0, 0.5)
    with pytest.raises(DomainError):
        XYQuery.from_xy(-1, 10)


def test_u_identity_far_out():
    q = XYQuery(math.e**50, 1e6)
    assert abs(q.lx(2) - q.ly(2) - math.log(q.u)) < 1e-12 * q.lx(2)


@settings(max_examples=1000, deadline=None)
@given(queries, st.floats(-3, 6))
def test_lower_forms_agree(q, a):
    f1, f2 = lower_forms(q, a)
    assert abs(f1 - f2) <= 1e-10 * max(1.0, abs(f1))


@settings(max_examples=200, deadline=None)
@given(queries, st.floats(-3, 6), st.floats(0.01, 3))
def test_monotone_in_a(q, a, d):
    assert ln_psi_lower_bound(q, a + d) > ln_psi_lower_bound(q, a)
    assert ln_psi_upper_bound(q, a + d) > ln_psi_upper_bound(q, a)
    if q.u > 1:
        assert ln_psi_upper_bound(q, a, with_slack=True) >= ln_psi_upper_bound(q, a, with_slack=False)


def test_million_hundred_values():
    q = XYQuery.from_xy(10**6, 100)
    lo = ln_psi_lower_bound(q, 1.0)
    assert math.isfinite(lo) and lo < 0
    assert ln_psi_upper_bound(q, 2.1) >= lo


def test_domain_checks_name_the_inequality():
    q = XYQuery.from_xy(10**6, 100)
    with pytest.raises(DomainError, match="right"):
        check_lower_domain(q, 0.5)  # ln x = 13.8 > sqrt(100)
    with pytest.raises(DomainError, match="left"):
        check_upper_domain(q, 2.5, 0.4)
    with pytest.raises(DomainError):
        ln_psi_lower_bound(q, 0.0, theta=0.5)


def test_domains_jointly_satisfiable():
    q = XYQuery(math.exp(20.0), 100.0)
    check_lower_domain(q, 0.5)
    check_upper_domain(q, 2.5, 0.4)
    assert math.isfinite(ln_psi_lower_bound(q, 0.0, theta=0.5))
    assert math.isfinite(ln_psi_upper_bound(q, 5.0, nu=2.5, beta=0.4))


@settings(max_examples=200, deadline=None)
@given(queries, st.floats(-2, 4))
def test_generalized_k3_is_the_bracket(q, a):
    assert generalized_bound(q, a, 3) * q.ln_x == pytest.approx(q.ln_x + ln_psi_lower_bound(q, a), rel=1e-10, abs=1e-9)
    diff = generalized_bound(q, a, 3) - generalized_bound(q, a, 2)
    assert diff == pytest.approx(-(q.lx(4) - q.ly(3)) / q.ln_y, rel=1e-9, abs=1e-12)


def test_generalized_gap_shrinks():
    gaps = []
    for lx in (1e2, 1e4, 1e8, 1e16, 1e32):
        q = XYQuery(lx, 0.1 * lx)
        gaps.append(abs(generalized_bound(q, 1.0, 3) - generalized_bound(q, 1.0, 2)))
    assert gaps == sorted(gaps, reverse=True)
    assert gaps[-1] < 1e-30


@settings(max_examples=300, deadline=None)
@given(queries, st.integers(1, 10**12))
def test_empirical_a_round_trip(q, p):
    assert psi_model(q, empirical_a(q, p)) == pytest.approx(math.log(p), rel=1e-10, abs=1e-10)


def test_empirical_a_at_million(table):
    q = XYQuery.from_xy(10**6, 100)
    a = empirical_a(q, psi(table, 10**6, 100))
    assert 0 < a < 4
    assert a == pytest.approx(0.7295638731527565, rel=1e-12)


def test_residual_trend():
    # y = exp((ln ln x)^2) stays inside exp((ln y)^nu) < ln x < y^beta for nu = beta = 0.4
    reports = []
    for L in (10, 20, 50, 100, 200, 400):
        q = XYQuery(math.exp(L), float(L) ** 2)
        reports.append(iterlog_estimates(q, 0.4, 0.4))
    for name in ("res_x3", "res_x4", "res_y4"):
        vals = [abs(getattr(r, name)) for r in reports]
        assert vals == sorted(vals, reverse=True), name
    for r in reports:
        assert r.slack_lo >= -0.5 and r.slack_hi >= -0.5
        assert r.log2x_above_log_u


def test_iterlog_domain_errors():
    q = XYQuery.from_xy(10**6, 100)
    with pytest.raises(DomainError):
        check_iterlog_domain(q, 1.5, 0.4)
    with pytest.raises(DomainError):
        iterlog_estimates(q, 0.4, 0.4)
