import dataclasses
import math

import pytest
from hypothesis import given, strategies as st

from sgqe import (HBAR, InvalidParameter, NegativeTime, ModelParams, correlation_coefficient,
                  derive_scales, packet_spread, reference_params, validate)


def test_reference_parameters_accepted():
    p = ModelParams(mass=1e-26, epsilon=1e8, wavelength=1e-5, delta_x0=1e-6, x0=1e-7,
                    transit_time=3e-8)
    assert validate(p) is p
    assert p.epsilon_T == pytest.approx(3.0)


@pytest.mark.parametrize("field, value", [
    ("delta_x0", 0.5e-5),
    ("mass", 0.0),
    ("epsilon", -1.0),
    ("transit_time", 0.0),
    ("x0", 0.3e-5),
])
def test_invalid_parameters(params, field, value):
    bad = dataclasses.replace(params, **{field: value})
    with pytest.raises(InvalidParameter) as info:
        validate(bad)
    assert info.value.field == field


def test_derived_scales(params):
    sc = derive_scales(params)
    assert sc.a == pytest.approx(6.626e5, rel=1e-3)
    assert sc.delta_p0 == pytest.approx(5.273e-29, rel=1e-3)
    assert HBAR * sc.k / sc.delta_p0 == pytest.approx(1.257, abs=1e-3)


def test_wider_packet_halves_momentum_width(params):
    wide = dataclasses.replace(params, delta_x0=2 * params.delta_x0)
    assert derive_scales(wide).delta_p0 == pytest.approx(derive_scales(params).delta_p0 / 2)


def test_packet_spread(params):
    assert packet_spread(params, 0.0) == params.delta_x0
    assert packet_spread(params, 3e-7) / params.delta_x0 - 1 == pytest.approx(1.25e-6, rel=0.01)
    sc = derive_scales(params)
    t_eq = params.mass * params.delta_x0 / sc.delta_p0
    assert packet_spread(params, t_eq) == pytest.approx(math.sqrt(2) * params.delta_x0)


def test_correlation_coefficient(params):
    assert correlation_coefficient(params, 0.0) == 0.0
    assert correlation_coefficient(params, 3e-7) == pytest.approx(1.582e-3, rel=1e-3)


def test_negative_time_rejected(params):
    with pytest.raises(NegativeTime):
        packet_spread(params, -1e-9)


@given(st.floats(0.0, 1e-2), st.floats(0.0, 1e-2))
def test_correlation_monotone_and_bounded(t1, t2):
    p = reference_params(3.0)
    lo, hi = sorted((t1, t2))
    r_lo, r_hi = correlation_coefficient(p, lo), correlation_coefficient(p, hi)
    assert 0.0 <= r_lo <= r_hi < 1.0
