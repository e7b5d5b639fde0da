import math

import numpy as np
import pytest
from scipy.signal import find_peaks

from sgqe import (BranchSign, Grid1D, GridTooNarrow, MeasurementOutcome, TimeBeforeExit,
                  UnconditionedOutcome, branch_x_amplitude, damping_factor, density_conditioned,
                  density_unconditioned, distinguishability_report, fringe_visibility,
                  interference_term, normalizations, reference_params)

ZERO, ONE, NONE = MeasurementOutcome.ZERO_PHOTONS, MeasurementOutcome.ONE_PHOTON, MeasurementOutcome.UNCONDITIONED


def _grid(params, points=8192):
    return Grid1D(params.x0 - 1.2 * params.wavelength, params.x0 + 1.2 * params.wavelength, points)


def test_initial_density_is_single_gaussian(params):
    g = _grid(params)
    d = density_unconditioned(params, g, 0.0)
    expected = np.exp(-(g.values - params.x0) ** 2 / (2 * params.delta_x0 ** 2))
    expected /= math.sqrt(2 * math.pi) * params.delta_x0
    assert np.max(np.abs(d.values - expected)) < 1e-12 * expected.max()


@pytest.mark.parametrize("epsilon_T", [0.3, 3.0, 30.0])
@pytest.mark.parametrize("t_over_T", [0.5, 1.0, 10.0])
def test_bookkeeping(epsilon_T, t_over_T):
    p = reference_params(epsilon_T)
    g = _grid(p)
    t = t_over_T * p.transit_time
    d0, d1 = density_conditioned(p, g, t, ZERO), density_conditioned(p, g, t, ONE)
    total = density_unconditioned(p, g, t)
    assert d0.integral() + d1.integral() == pytest.approx(1.0, abs=1e-10)
    assert d0.integral() == pytest.approx(d0.ensemble_fraction, abs=1e-10)
    assert np.max(np.abs(d0.values + d1.values - total.values)) < 1e-14 * total.values.max()
    if t_over_T >= 1:
        assert d0.ensemble_fraction == pytest.approx(normalizations(p)[0] / 4, abs=1e-14)


def test_weak_interaction_keeps_ground_channel():
    p = reference_params(0.3)
    d0 = density_conditioned(p, _grid(p), 10 * p.transit_time, ZERO)
    assert d0.integral() == pytest.approx(0.965, abs=1e-3)


def test_fringe_spacing_and_antifringe_null(centred):
    p = centred
    g = Grid1D(-1.2 * p.wavelength, 1.2 * p.wavelength, 32768)
    t = 10 * p.transit_time
    d0 = density_conditioned(p, g, t, ZERO).values
    d1 = density_conditioned(p, g, t, ONE).values
    total = density_unconditioned(p, g, t).values
    # peaks of the envelope-free fringe pattern P0/P
    peaks, _ = find_peaks(d0 / total)
    spacing = np.diff(g.values[peaks]).mean()
    assert spacing == pytest.approx(p.wavelength / 6, rel=0.02)
    centre = g.points // 2
    assert g.values[centre] == 0.0
    assert abs(d1[centre]) < 1e-12 * d1.max()


def test_interference_term_closed_form(params):
    g = _grid(params)
    t = 10 * params.transit_time
    up = branch_x_amplitude(params, BranchSign.PLUS, g.values, t)
    dn = branch_x_amplitude(params, BranchSign.MINUS, g.values, t)
    cross = 2 * np.real(np.conj(up) * dn)
    closed = interference_term(params, g.values, t)
    assert np.max(np.abs(closed - cross)) < 1e-12 * np.max(np.abs(cross))


def test_errors(params):
    g = _grid(params, 1024)
    with pytest.raises(UnconditionedOutcome):
        density_conditioned(params, g, params.transit_time, NONE)
    with pytest.raises(TimeBeforeExit):
        interference_term(params, g.values, 0.5 * params.transit_time)
    with pytest.raises(GridTooNarrow):
        density_unconditioned(params, Grid1D(-params.delta_x0, params.delta_x0, 256), 0.0)


@pytest.mark.parametrize("t_over_T, lo, hi", [(10, 0.9, 1.0), (1e5, 0.0, 0.05)])
def test_visibility(centred, t_over_T, lo, hi):
    v = fringe_visibility(centred, t_over_T * centred.transit_time, ZERO)
    assert lo < v <= hi + 1e-12
    assert fringe_visibility(centred, t_over_T * centred.transit_time, ONE) == v
    assert fringe_visibility(centred, t_over_T * centred.transit_time, NONE) == 0.0


def test_visibility_is_monotone_after_exit(centred):
    ts = np.geomspace(1, 1e5, 12) * centred.transit_time
    vs = [fringe_visibility(centred, t, ZERO) for t in ts]
    assert all(b <= a + 1e-12 for a, b in zip(vs, vs[1:]))


def test_damping_factor():
    weak = reference_params(0.3)
    assert weak.epsilon_T == pytest.approx(0.3)
    r = damping_factor(weak, 1e3 * weak.transit_time)
    assert r.momentum_term == pytest.approx((5 / (2 * math.pi * 0.3)) ** 2, rel=1e-3)
    assert not damping_factor(weak, 1e9 * weak.transit_time).damped
    p = reference_params(3.0)
    r = damping_factor(p, 10 * p.transit_time)
    assert r.position_term == pytest.approx(2.8e4, rel=0.02)
    assert not r.damped
    assert damping_factor(p, 1e5 * p.transit_time).damped
    with pytest.raises(TimeBeforeExit):
        damping_factor(p, p.transit_time)


@pytest.mark.parametrize("epsilon_T, expected", [(0.3, False), (3.0, True), (30.0, True)])
def test_distinguishability(epsilon_T, expected):
    assert distinguishability_report(reference_params(epsilon_T)).distinguishable is expected
