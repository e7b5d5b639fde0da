"""Position densities with and without the cavity field measurement, and
diagnostics of the interference term."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .branches import BranchSign, _kinematics, branch_overlap, branch_x_amplitude
from .errors import GridTooNarrow, TimeBeforeExit, UnconditionedOutcome
from .grids import Grid1D
from .measurement import MeasurementOutcome
from .model import HBAR, ModelParams, _check_time, derive_scales, packet_spread
from .phase_space import normalizations

__all__ = [
    "MeasurementOutcome", "DensityProfile", "DampingReport", "DistinguishabilityReport",
    "density_unconditioned", "density_conditioned", "record_probability", "interference_term",
    "fringe_visibility", "visibility_crossover_time", "damping_factor",
    "distinguishability_report",
]

MASS_TOL = 1e-6


@dataclass(frozen=True)
class DensityProfile:
    grid: Grid1D
    values: np.ndarray
    outcome: MeasurementOutcome
    time: float
    ensemble_fraction: float

    def integral(self) -> float:
        return float(self.grid.integrate(self.values))

    def normalized(self) -> np.ndarray:
        """Post-selected density (integrates to one)."""
        return self.values / self.ensemble_fraction


def _branch_pair(params, grid, t):
    x = grid.values
    return (branch_x_amplitude(params, BranchSign.PLUS, x, t),
            branch_x_amplitude(params, BranchSign.MINUS, x, t))


def _check_capture(grid: Grid1D, direct: np.ndarray) -> None:
    mass = float(grid.integrate(direct))
    if mass < 1.0 - MASS_TOL:
        raise GridTooNarrow(f"grid captures only {mass:.9f} of the probability")


def density_unconditioned(params: ModelParams, grid: Grid1D, t: float) -> DensityProfile:
    _check_time(t)
    up, dn = _branch_pair(params, grid, t)
    values = 0.5 * (np.abs(up) ** 2 + np.abs(dn) ** 2)
    _check_capture(grid, values)
    return DensityProfile(grid, values, MeasurementOutcome.UNCONDITIONED, t, 1.0)


def density_conditioned(params: ModelParams, grid: Grid1D, t: float, outcome) -> DensityProfile:
    """Fringes (zero photons) or antifringes (one photon), weighted by the
    probability N/4 of that record."""
    _check_time(t)
    outcome = MeasurementOutcome(outcome)
    if outcome is MeasurementOutcome.UNCONDITIONED:
        raise UnconditionedOutcome()
    up, dn = _branch_pair(params, grid, t)
    _check_capture(grid, 0.5 * (np.abs(up) ** 2 + np.abs(dn) ** 2))
    values = 0.25 * np.abs(up + outcome.sign * dn) ** 2
    return DensityProfile(grid, values, outcome, t, record_probability(params, t, outcome))


def record_probability(params: ModelParams, t: float, outcome) -> float:
    """Probability N/4 of the measurement record; equals N0/4 or N1/4 once t >= T."""
    _check_time(t)
    outcome = MeasurementOutcome(outcome)
    if outcome is MeasurementOutcome.UNCONDITIONED:
        return 1.0
    if t >= params.transit_time:
        n0, n1 = normalizations(params)
        return 0.25 * (n0 if outcome.sign > 0 else n1)
    return 0.5 * (1.0 + outcome.sign * branch_overlap(params, t).real)


def interference_term(params: ModelParams, x, t: float):
    """2 Re[phi+^* phi-] outside the cavity, evaluated from its closed form."""
    _check_time(t)
    T = params.transit_time
    if t < T:
        raise TimeBeforeExit(t, T)
    sc = derive_scales(params)
    dxt = packet_spread(params, t)
    shift = sc.a * T * (t - 0.5 * T)
    eta = (sc.delta_p0 / params.mass) ** 2 * t * (t - 0.5 * T) / (dxt * dxt)
    x = np.asarray(x, dtype=float)
    u = x - params.x0
    env = 2.0 / (math.sqrt(2.0 * math.pi) * dxt) * np.exp(-(u * u + shift * shift) / (2.0 * dxt * dxt))
    return env * np.cos(2.0 * sc.epsilon_T * sc.k * (x - u * eta))


def fringe_visibility(params: ModelParams, t: float, outcome, points: int = 4096) -> float:
    """Contrast of the interference pattern against the main peaks,
    max|2 Re phi+^* phi-| / max(|phi+|^2 + |phi-|^2).

    Where the two packets overlap this is the usual (max - min)/(max + min)
    of the conditional density; once they separate it measures how much of
    the fringe amplitude survives relative to the peaks.  The same value is
    returned for both measurement records, and 0 without a measurement.
    For eps*T < 1 there are no resolved fringes and the number describes a
    single diffraction lobe.
    """
    _check_time(t)
    T = params.transit_time
    if t < T:
        raise TimeBeforeExit(t, T)
    if MeasurementOutcome(outcome) is MeasurementOutcome.UNCONDITIONED:
        return 0.0
    sc = derive_scales(params)
    dxt = packet_spread(params, t)
    c, _ = _kinematics(params, t)
    # fringe amplitude peaks within a few envelope widths of x0
    eta = (sc.delta_p0 / params.mass) ** 2 * t * (t - 0.5 * T) / (dxt * dxt)
    period = math.pi / (sc.epsilon_T * sc.k * max(abs(1.0 - eta), 1e-300))
    n_fringe = int(min(max(points, 32 * 8 * dxt / period), 2 ** 22))
    xf = params.x0 + np.linspace(-4.0 * dxt, 4.0 * dxt, n_fringe + 1)
    fringe = np.max(np.abs(interference_term(params, xf, t)))
    xs = params.x0 + np.linspace(-(c + 6.0 * dxt), c + 6.0 * dxt, points + 1)
    direct = sum(np.abs(branch_x_amplitude(params, s, xs, t)) ** 2 for s in BranchSign)
    return float(fringe / np.max(direct))


def visibility_crossover_time(params: ModelParams, level: float = math.exp(-1.0),
                              t_max_over_T: float = 1e8) -> float:
    """First time after the exit at which the fringe visibility falls to ``level``."""
    T = params.transit_time
    zero = MeasurementOutcome.ZERO_PHOTONS

    def f(log_t):
        return fringe_visibility(params, max(math.exp(log_t), T), zero) - level

    lo, hi = math.log(T), math.log(t_max_over_T * T)
    if f(lo) < 0:
        return T
    if f(hi) > 0:
        raise ValueError("visibility never drops to the requested level")
    return math.exp(brentq(f, lo, hi, xtol=1e-10))


@dataclass(frozen=True)
class DampingReport:
    factor: float
    position_term: float
    momentum_term: float

    @property
    def damped(self) -> bool:
        return self.factor > 1.0


def damping_factor(params: ModelParams, t: float) -> DampingReport:
    """F = 1/2 [(dx0/(a t T))^2 + (dp0/(m a T))^2]^-1; F > 1 signals damped fringes."""
    _check_time(t)
    T = params.transit_time
    if t <= T:
        raise TimeBeforeExit(t, T)
    sc = derive_scales(params)
    pos = (params.delta_x0 / (sc.a * t * T)) ** 2
    mom = (sc.delta_p0 / (params.mass * sc.a * T)) ** 2
    return DampingReport(0.5 / (pos + mom), pos, mom)


@dataclass(frozen=True)
class DistinguishabilityReport:
    epsilon_T: float
    momentum_separation_over_width: float
    strict: bool
    rounded: bool
    distinguishable: bool


def distinguishability_report(params: ModelParams) -> DistinguishabilityReport:
    """Which-way readability from the momentum record: hbar k eps T > dp0.

    ``rounded`` is the eps*T > 1 form of the rule, which is what decides when
    dx0 = lambda/10 (hbar k ~ 1.26 dp0); otherwise the strict rule decides.
    """
    sc = derive_scales(params)
    ratio = HBAR * sc.k * sc.epsilon_T / sc.delta_p0
    strict = ratio > 1.0
    rounded = sc.epsilon_T > 1.0
    default_width = math.isclose(params.delta_x0, params.wavelength / 10.0, rel_tol=1e-9)
    return DistinguishabilityReport(sc.epsilon_T, ratio, strict, rounded,
                                    rounded if default_width else strict)
