import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sgqe import (HBAR, BranchSign, MeasurementOutcome, TimeBeforeExit, WignerKind,
                  branch_x_amplitude, normalizations, reference_params, phase_space_distance,
                  uncertainty_area_conditioned, uncertainty_area_reduced, wigner_branch,
                  wigner_conditioned, wigner_field, wigner_interference)
from sgqe.phase_space import conditioned_area_closed_form, default_phase_grid, quadrature_det, state_moments

ZERO, ONE = MeasurementOutcome.ZERO_PHOTONS, MeasurementOutcome.ONE_PHOTON
QUARTER_H2 = HBAR * HBAR / 4


def test_branch_peak_at_start(params):
    w = wigner_branch(params, BranchSign.PLUS, params.x0, 0.0, 0.0)
    assert w == pytest.approx(1 / (2 * math.pi * HBAR), rel=1e-12)


@pytest.mark.parametrize("epsilon_T, D", [(0.3, 0.754), (3.0, 7.540), (30.0, 75.40)])
def test_phase_space_distance(epsilon_T, D):
    p = reference_params(epsilon_T)
    assert phase_space_distance(p, 0.0) == 0.0
    assert phase_space_distance(p, p.transit_time) == pytest.approx(D, rel=1e-3)
    assert phase_space_distance(p, 50 * p.transit_time) == phase_space_distance(p, p.transit_time)


def test_normalizations():
    n0, n1 = normalizations(reference_params(0.3))
    assert n0 == pytest.approx(3.861, abs=1e-3)
    assert n0 + n1 == pytest.approx(4.0, abs=1e-14)
    assert normalizations(reference_params(30.0, x0_over_lambda=0.0)) == pytest.approx((2.0, 2.0), abs=1e-14)


def test_reduced_field(params):
    t = 10 * params.transit_time
    field = wigner_field(params, default_phase_grid(params, t, 512), t, WignerKind.REDUCED)
    assert field.integral() == pytest.approx(1.0, abs=1e-8)
    assert field.min() >= -1e-14
    xs = field.grid.x.values
    direct = 0.5 * sum(np.abs(branch_x_amplitude(params, s, xs, t)) ** 2 for s in BranchSign)
    assert np.max(np.abs(field.position_marginal() - direct)) < 1e-6 * direct.max()


def test_interference_peak(centred):
    t = 10 * centred.transit_time
    assert wigner_interference(centred, 0.0, 0.0, t) == pytest.approx(2 / (2 * math.pi * HBAR), rel=1e-12)
    with pytest.raises(TimeBeforeExit):
        wigner_interference(centred, 0.0, 0.0, 0.5 * centred.transit_time)


def test_conditioned_field_is_negative_somewhere(params):
    t = 10 * params.transit_time
    grid = default_phase_grid(params, t, 512)
    w0 = wigner_field(params, grid, t, WignerKind.CONDITIONED_ZERO)
    assert w0.min() < 0
    assert w0.integral() == pytest.approx(1.0, abs=1e-6)


def test_conditioned_pair_averages_to_reduced(params):
    t = 3 * params.transit_time
    grid = default_phase_grid(params, t, 64)
    x, p = grid.mesh()
    n0, n1 = normalizations(params)
    mix = 0.25 * (n0 * wigner_conditioned(params, x, p, t, ZERO)
                  + n1 * wigner_conditioned(params, x, p, t, ONE))
    reduced = wigner_field(params, grid, t, WignerKind.REDUCED).values
    assert np.max(np.abs(mix - reduced)) < 1e-12 * reduced.max()


def test_reduced_determinant(params):
    T = params.transit_time
    assert uncertainty_area_reduced(params, 0.0).det == pytest.approx(QUARTER_H2, rel=1e-12)
    det_T = uncertainty_area_reduced(params, T).det
    assert det_T / QUARTER_H2 == pytest.approx(15.21, abs=0.01)
    for t in (2 * T, 10 * T, 100 * T):
        s = uncertainty_area_reduced(params, t)
        assert s.det == pytest.approx(det_T, rel=1e-9)
        assert s.var_x * s.var_p - s.cov_xp ** 2 == pytest.approx(det_T, rel=1e-9)


def test_reduced_determinant_by_quadrature(params):
    t = 10 * params.transit_time
    det, _ = quadrature_det(params, t)
    assert det == pytest.approx(uncertainty_area_reduced(params, t).det, rel=1e-6)


@pytest.mark.parametrize("outcome", [ZERO, ONE])
def test_conditioned_closed_form_matches_moment_algebra(outcome):
    p = reference_params(0.3, x0_over_lambda=0.0)
    sign = 1 if outcome is ZERO else -1
    moments = state_moments(p, p.transit_time, {1: 1.0, -1: float(sign)})
    n0, n1 = normalizations(p)
    closed = conditioned_area_closed_form(phase_space_distance(p, p.transit_time),
                                          n0 if sign > 0 else n1, sign)
    assert moments.det == pytest.approx(closed, rel=1e-12)


def test_area_ordering_weak_interaction():
    p = reference_params(0.3, x0_over_lambda=0.0)
    d0 = uncertainty_area_conditioned(p, ZERO).det
    d1 = uncertainty_area_conditioned(p, ONE).det
    dr = uncertainty_area_reduced(p, p.transit_time).det
    assert d0 <= dr <= d1
    assert d0 / QUARTER_H2 == pytest.approx(1.0, abs=1e-3)


def test_areas_merge_when_paths_separate():
    p = reference_params(30.0, x0_over_lambda=0.0)
    dr = uncertainty_area_reduced(p, p.transit_time).det
    for outcome in (ZERO, ONE):
        assert abs(uncertainty_area_conditioned(p, outcome).det - dr) / dr < 1e-12


def test_conditioned_area_constant_after_exit(params):
    T = params.transit_time
    dets = [uncertainty_area_conditioned(params, ZERO, t).det for t in (T, 5 * T, 100 * T)]
    assert dets == pytest.approx([dets[0]] * 3, rel=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.05, 40.0), st.floats(-0.25, 0.25))
def test_areas_respect_heisenberg(epsilon_T, x0_over_lambda):
    p = reference_params(epsilon_T, x0_over_lambda=x0_over_lambda)
    for outcome in (ZERO, ONE):
        assert uncertainty_area_conditioned(p, outcome).det >= QUARTER_H2 * (1 - 1e-9)
