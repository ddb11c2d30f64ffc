import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import LN_RHO_REFERENCE, rho_oracle
from smoothbound.dickman import Asymptote, RhoSolver, integral_form_table, ln_rho, rho, rho_asymptote
from smoothbound.errors import DomainError


@pytest.fixture(scope="module")
def solver():
    return RhoSolver(step=1e-3, max_u=100)


def test_closed_pieces(solver):
    assert rho(solver, 0.5) == 1.0
    assert rho(solver, 2.0) == pytest.approx(1 - math.log(2), abs=1e-15)
    assert ln_rho(solver, 2.0) == pytest.approx(math.log(1 - math.log(2)), abs=1e-15)
    assert ln_rho(solver, 2.0) == pytest.approx(-1.1814, abs=1e-4)


def test_rho3(solver):
    assert abs(rho(solver, 3.0) - 0.0486083882911316) <= 1e-6


@pytest.mark.parametrize("u", sorted(LN_RHO_REFERENCE))
def test_log_table_against_series(solver, u):
    # relative error in rho grows roughly like 3e-6 u
    assert abs(ln_rho(solver, u) - LN_RHO_REFERENCE[u]) <= 5e-6 * u


@settings(max_examples=60, deadline=None)
@given(st.floats(1.0, 12.0))
def test_random_points_against_series(solver, u):
    assert rho(solver, u) == pytest.approx(rho_oracle(u), rel=5e-6 * u, abs=1e-15)


def test_second_order_convergence():
    coarse = RhoSolver(step=2e-3, max_u=10)
    fine = RhoSolver(step=1e-3, max_u=10)
    for u in (3.0, 5.5, 10.0):
        e1 = abs(ln_rho(coarse, u) - LN_RHO_REFERENCE.get(u, math.log(rho_oracle(u))))
        e2 = abs(ln_rho(fine, u) - LN_RHO_REFERENCE.get(u, math.log(rho_oracle(u))))
        assert math.log2(e1 / e2) >= 1.8


def test_integral_form_agrees_where_resolved(solver):
    lin = integral_form_table(step=1e-3, max_u=10)
    n = 1000
    for u in (3, 4):
        assert lin[u * n] == pytest.approx(rho(solver, u), rel=1e-4)
    # absolute error ~ step^2 swamps rho once it drops below ~1e-4
    assert abs(lin[8 * n] / rho(solver, 8.0) - 1) > 0.1


def test_linear_and_log_accessors_agree(solver):
    for u in (2.5, 7.3, 10.0):
        assert math.log(rho(solver, u)) == pytest.approx(ln_rho(solver, u), abs=1e-6)


def test_large_u_stays_finite(solver):
    v = ln_rho(solver, 50.0)
    assert math.isfinite(v) and v < -200
    assert rho(solver, 100.0) > 0


def test_monotone_decreasing(solver):
    assert np.all(np.diff(solver.values) <= 0)
    assert np.all(solver.values > 0)


def test_table_read_only(solver):
    with pytest.raises(ValueError):
        solver.log_values[5] = 0.0


def test_out_of_range(solver):
    with pytest.raises(DomainError):
        ln_rho(solver, 101.0)
    with pytest.raises(DomainError):
        RhoSolver(step=0.0)


def test_asymptote_values():
    assert rho_asymptote(math.e**2, Asymptote.UL) == pytest.approx(-2 * math.e**2)
    assert rho_asymptote(20.0, Asymptote.UL2) == pytest.approx(-20 * (math.log(20) + math.log(math.log(20))))
    assert rho_asymptote(20.0) == pytest.approx(-81.86, abs=0.01)
    with pytest.raises(DomainError):
        rho_asymptote(2.0, Asymptote.UL2)


def test_asymptote_band_at_50(solver):
    ratio = ln_rho(solver, 50.0) / rho_asymptote(50.0)
    l2 = math.log(math.log(50.0))
    assert abs(ratio - 1) <= 2 * math.log(l2) / l2


def test_window_identity(solver):
    # u rho(u) = int_{u-1}^{u} rho(t) dt on the solver mesh
    n = solver.per_unit
    v = solver.values
    for u in (3.5, 7.25, 30.0):
        i = round(u * n)
        seg = v[i - n : i + 1]
        integral = (seg.sum() - 0.5 * (seg[0] + seg[-1])) / n
        assert u * v[i] == pytest.approx(integral, rel=1e-5)
