"""Blended regenerative braking."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bevsim.regen import RegenParams, regen_power


def params(beta=0.8, eta=0.9, ceiling=60000.0, soc_limit=0.98):
    return RegenParams(
        beta=beta, eta_regen=eta, p_regen_max_w=ceiling, soc_upper_limit=soc_limit
    )


def test_chain_evaluation():
    # -50 kW wheel, beta 0.8 -> 40 kW hardware, eta 0.9 -> 36 kW electrical
    p_regen, p_friction = regen_power(-50000.0, 15.0, True, 0.7, params())
    assert p_regen == pytest.approx(36000.0)
    assert p_friction == pytest.approx(10000.0)


def test_ceiling_binds():
    p_regen, p_friction = regen_power(-100000.0, 20.0, True, 0.7, params())
    assert p_regen == pytest.approx(0.9 * 60000.0)
    assert p_friction == pytest.approx(40000.0)


def test_suppressed_below_speed_cutoff():
    p_regen, p_friction = regen_power(-50000.0, 0.3, True, 0.7, params())
    assert p_regen == 0.0
    assert p_friction == pytest.approx(50000.0)


def test_no_opportunity_under_traction():
    assert regen_power(30000.0, 20.0, False, 0.7, params()) == (0.0, 0.0)


def test_suppressed_at_soc_ceiling():
    p_regen, p_friction = regen_power(-50000.0, 15.0, True, 0.98, params())
    assert p_regen == 0.0
    assert p_friction == pytest.approx(50000.0)


def test_suppressed_without_brake_demand():
    assert regen_power(-50000.0, 15.0, False, 0.7, params())[0] == 0.0


def test_beta_zero_and_one():
    assert regen_power(-50000.0, 15.0, True, 0.7, params(beta=0.0))[0] == 0.0
    p_regen, p_friction = regen_power(
        -50000.0, 15.0, True, 0.7, params(beta=1.0, eta=1.0, ceiling=1e12)
    )
    assert p_regen == pytest.approx(50000.0)
    assert p_friction == 0.0


@given(
    p_wheel=st.floats(-200000.0, 0.0),
    v=st.floats(0.0, 50.0),
    soc=st.floats(0.05, 0.98),
    b1=st.floats(0.0, 1.0),
    b2=st.floats(0.0, 1.0),
)
@settings(max_examples=80, deadline=None)
def test_monotone_in_beta(p_wheel, v, soc, b1, b2):
    lo, hi = sorted((b1, b2))
    p_lo, _ = regen_power(p_wheel, v, True, soc, params(beta=lo))
    p_hi, _ = regen_power(p_wheel, v, True, soc, params(beta=hi))
    assert p_lo <= p_hi + 1e-9


@given(
    p_wheel=st.floats(-500000.0, 500000.0),
    v=st.floats(0.0, 60.0),
    brake=st.booleans(),
    soc=st.floats(0.0, 1.0),
    beta=st.floats(0.0, 1.0),
    eta=st.floats(0.1, 1.0),
)
@settings(max_examples=80, deadline=None)
def test_bounds_always_hold(p_wheel, v, brake, soc, beta, eta):
    p = params(beta=beta, eta=eta)
    p_regen, p_friction = regen_power(p_wheel, v, brake, soc, p)
    assert 0.0 <= p_regen <= p.eta_regen * p.p_regen_max_w + 1e-9
    assert p_friction >= 0.0
