"""Wigner functions, covariance matrices and uncertainty areas.

The branch Wigner functions are Gaussians sharing the free-particle
covariance

    [[dx_t^2,        dp0^2 t / m],
     [dp0^2 t / m,   dp0^2      ]]

(a linear potential shifts a packet without reshaping it) and centred on
the branch centres.  Cross terms between the branches are Gaussians
centred on the midpoint times a plane wave in phase space; their second
moments are integrated exactly, which gives conditional covariances for
any packet position x0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .branches import BranchSign, _kinematics, branch_centers
from .errors import TimeBeforeExit, UnconditionedOutcome
from .grids import Grid1D, Grid2D
from .measurement import MeasurementOutcome
from .model import HBAR, ModelParams, _check_time, correlation_coefficient, derive_scales, packet_spread
from .oracle import CovarianceSummary


class WignerKind(Enum):
    REDUCED = "reduced"
    CONDITIONED_ZERO = "zero"
    CONDITIONED_ONE = "one"
    BRANCH_PLUS = "plus"
    BRANCH_MINUS = "minus"
    INTERFERENCE = "interference"


@dataclass(frozen=True)
class WignerField:
    grid: Grid2D
    values: np.ndarray
    kind: Optional[WignerKind]
    time: float

    def integral(self) -> float:
        return self.grid.integrate(self.values)

    def min(self) -> float:
        return float(self.values.min())

    def position_marginal(self) -> np.ndarray:
        return self.grid.p.integrate(self.values, axis=1)

    def momentum_marginal(self) -> np.ndarray:
        return self.grid.x.integrate(self.values, axis=0)


def _require_exit(params: ModelParams, t: float) -> None:
    _check_time(t)
    if t < params.transit_time:
        raise TimeBeforeExit(t, params.transit_time)


def _conditioning_sign(outcome) -> int:
    outcome = MeasurementOutcome(outcome)
    if outcome is MeasurementOutcome.UNCONDITIONED:
        raise UnconditionedOutcome()
    return outcome.sign


def covariance_matrix(params: ModelParams, t: float) -> np.ndarray:
    """Covariance shared by both branch Gaussians."""
    dp0 = derive_scales(params).delta_p0
    dxt = packet_spread(params, t)
    c = dp0 * dp0 * t / params.mass
    return np.array([[dxt * dxt, c], [c, dp0 * dp0]])


def _gaussian(params: ModelParams, x, p, t: float, x_c: float, p_c: float):
    """Minimum-uncertainty Gaussian Wigner function of unit weight, peak 1/(pi hbar)."""
    dxt = packet_spread(params, t)
    dp0 = derive_scales(params).delta_p0
    rho = correlation_coefficient(params, t)
    X = (np.asarray(x, dtype=float) - x_c) / dxt
    P = (np.asarray(p, dtype=float) - p_c) / dp0
    q = (X * X - 2.0 * rho * X * P + P * P) / (1.0 - rho * rho)
    return np.exp(-0.5 * q) / (math.pi * HBAR)


def wigner_branch(params: ModelParams, sign: int, x, p, t: float):
    """W^s: half of the Wigner function of phi^s (integrates to 1/2)."""
    _check_time(t)
    ctr = branch_centers(params, BranchSign(sign), t)
    return 0.5 * _gaussian(params, x, p, t, ctr.x_c, ctr.p_c)


def wigner_reduced(params: ModelParams, x, p, t: float):
    return (wigner_branch(params, BranchSign.PLUS, x, p, t)
            + wigner_branch(params, BranchSign.MINUS, x, p, t))


def _interference(params: ModelParams, x, p, t: float):
    c, tau = _kinematics(params, t)
    kappa = params.epsilon * params.k * tau
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    env = _gaussian(params, x, p, t, params.x0, 0.0)
    return env * np.cos(2.0 * kappa * x - 2.0 * c * p / HBAR)


def wigner_interference(params: ModelParams, x, p, t: float):
    """W^q = Re W[phi+, phi-]: a Gaussian envelope at (x0, 0) with peak 2/(2 pi hbar)
    modulated by cos(2 eps k T [x - (p/m)(t - T/2)])."""
    _require_exit(params, t)
    return _interference(params, x, p, t)


def normalizations(params: ModelParams) -> tuple[float, float]:
    """Squared norms N0, N1 of phi+ + phi- and phi+ - phi- after the transit."""
    T = params.transit_time
    D = phase_space_distance(params, T)
    cross = math.exp(-D * D / 8.0) * math.cos(2.0 * params.epsilon * params.k * params.x0 * T)
    return 2.0 * (1.0 + cross), 2.0 * (1.0 - cross)


def wigner_conditioned(params: ModelParams, x, p, t: float, outcome):
    _require_exit(params, t)
    sign = _conditioning_sign(outcome)
    n0, n1 = normalizations(params)
    norm = n0 if sign > 0 else n1
    return (2.0 / norm) * (wigner_reduced(params, x, p, t) + sign * _interference(params, x, p, t))


def phase_space_distance(params: ModelParams, t: float) -> float:
    """Branch-centre separation in units of (dx0, dp0); frozen after the exit."""
    _check_time(t)
    sc = derive_scales(params)
    tau = min(t, params.transit_time)
    return 2.0 * math.hypot(0.5 * sc.a * tau * tau / params.delta_x0,
                            params.mass * sc.a * tau / sc.delta_p0)


def _pair_terms(params: ModelParams, t: float, coefficients: dict[int, complex]):
    """Exact zeroth/first/second moments of sum_ab c_a c_b^* W[phi_a, phi_b],
    in coordinates ((x - x0)/dx0, p/dp0)."""
    sc = derive_scales(params)
    c, tau = _kinematics(params, t)
    kappa = params.epsilon * params.k * tau
    scale = np.array([params.delta_x0, sc.delta_p0])
    cov = covariance_matrix(params, t) / np.outer(scale, scale)

    m0 = 0.0 + 0.0j
    m1 = np.zeros(2, dtype=complex)
    m2 = np.zeros((2, 2), dtype=complex)
    for sa, ca in coefficients.items():
        for sb, cb in coefficients.items():
            ka, kb = -sa * kappa, -sb * kappa
            qa, qb = -sa * c, -sb * c  # relative to x0
            mu = np.array([0.5 * (qa + qb), HBAR * 0.5 * (ka + kb)]) / scale
            g = np.array([ka - kb, -(qa - qb) / HBAR]) * scale
            theta0 = (qa - qb) * 0.5 * (ka + kb) + (ka - kb) * params.x0
            sg = cov @ g
            weight = ca * np.conj(cb) * np.exp(1j * (g @ mu + theta0) - 0.5 * g @ sg)
            v = mu + 1j * sg
            m0 += weight
            m1 += weight * v
            m2 += weight * (cov + np.outer(v, v))
    return m0.real, m1.real, m2.real, scale


def state_moments(params: ModelParams, t: float, coefficients: dict[int, complex]) -> CovarianceSummary:
    """Covariance of the (normalised) translational state or mixture built from the branches.

    ``coefficients`` maps branch sign to amplitude; pass e.g. ``{1: 1, -1: 1}``
    for the zero-photon state.
    """
    m0, m1, m2, scale = _pair_terms(params, t, coefficients)
    mean = m1 / m0
    second = m2 / m0 - np.outer(mean, mean)
    vx, vp, cxp = second[0, 0], second[1, 1], second[0, 1]
    det = (vx * vp - cxp * cxp) * (scale[0] * scale[1]) ** 2
    return CovarianceSummary.from_moments(
        params.x0 + mean[0] * scale[0], mean[1] * scale[1],
        vx * scale[0] ** 2, vp * scale[1] ** 2, cxp * scale[0] * scale[1], det)


def uncertainty_area_reduced(params: ModelParams, t: float) -> CovarianceSummary:
    """Second moments of W_r; det = (hbar^2/4)(1 + D^2/4)."""
    _check_time(t)
    sc = derive_scales(params)
    c, tau = _kinematics(params, t)
    kick = params.mass * sc.a * tau
    dxt = packet_spread(params, t)
    var_x = dxt * dxt + c * c
    var_p = sc.delta_p0 ** 2 + kick * kick
    cov = sc.delta_p0 ** 2 * t / params.mass + c * kick
    D = phase_space_distance(params, t)
    det = 0.25 * HBAR * HBAR * (1.0 + 0.25 * D * D)
    return CovarianceSummary.from_moments(params.x0, 0.0, var_x, var_p, cov, det)


def conditioned_area_closed_form(D: float, norm: float, sign: int) -> float:
    """Squared uncertainty area of (phi+ +/- phi-)/sqrt(N) for x0 = 0."""
    y = 0.25 * D * D
    bracket = (1.0 + y + sign * (2.0 - y * y) * math.exp(-0.5 * y)
               + (1.0 - y) * math.exp(-y))
    return HBAR * HBAR / (norm * norm) * bracket


def uncertainty_area_conditioned(params: ModelParams, outcome,
                                 t: Optional[float] = None) -> CovarianceSummary:
    """Moments of the post-measurement translational state at ``t`` (default T).

    The determinant does not depend on ``t`` once t >= T.  For x0 = 0 it is
    taken from the closed-form expression; otherwise from the exact moment
    algebra.
    """
    sign = _conditioning_sign(outcome)
    t = params.transit_time if t is None else t
    _require_exit(params, t)
    summary = state_moments(params, t, {1: 1.0, -1: float(sign)})
    if params.x0 == 0.0:
        n0, n1 = normalizations(params)
        det = conditioned_area_closed_form(phase_space_distance(params, t), n0 if sign > 0 else n1, sign)
        summary = CovarianceSummary.from_moments(summary.mean_x, summary.mean_p, summary.var_x,
                                                 summary.var_p, summary.cov_xp, det)
    return summary


def default_phase_grid(params: ModelParams, t: float, points: int = 512,
                       margin: float = 8.0) -> Grid2D:
    c, tau = _kinematics(params, t)
    sc = derive_scales(params)
    hx = abs(c) + margin * packet_spread(params, t)
    hp = params.mass * sc.a * tau + margin * sc.delta_p0
    return Grid2D(Grid1D(params.x0 - hx, params.x0 + hx, points), Grid1D(-hp, hp, points))


def wigner_field(params: ModelParams, grid: Grid2D, t: float, kind) -> WignerField:
    kind = WignerKind(kind)
    x, p = grid.mesh()
    if kind is WignerKind.REDUCED:
        w = wigner_reduced(params, x, p, t)
    elif kind is WignerKind.BRANCH_PLUS:
        w = wigner_branch(params, BranchSign.PLUS, x, p, t)
    elif kind is WignerKind.BRANCH_MINUS:
        w = wigner_branch(params, BranchSign.MINUS, x, p, t)
    elif kind is WignerKind.INTERFERENCE:
        w = wigner_interference(params, x, p, t)
    elif kind is WignerKind.CONDITIONED_ZERO:
        w = wigner_conditioned(params, x, p, t, MeasurementOutcome.ZERO_PHOTONS)
    else:
        w = wigner_conditioned(params, x, p, t, MeasurementOutcome.ONE_PHOTON)
    return WignerField(grid=grid, values=w, kind=kind, time=t)


def field_moments(field: WignerField) -> CovarianceSummary:
    """Moments of a sampled Wigner field by 2-D trapezoidal quadrature."""
    g = field.grid
    xs = g.x.values
    ps = g.p.values
    x_ref = 0.5 * (xs[0] + xs[-1])
    sx = xs[-1] - xs[0]
    sp = ps[-1] - ps[0]
    X = ((xs - x_ref) / sx)[:, None]
    P = (ps / sp)[None, :]
    w = field.values
    norm = g.integrate(w)
    mx = g.integrate(w * X) / norm
    mp = g.integrate(w * P) / norm
    vx = g.integrate(w * (X - mx) ** 2) / norm
    vp = g.integrate(w * (P - mp) ** 2) / norm
    cxp = g.integrate(w * (X - mx) * (P - mp)) / norm
    return CovarianceSummary.from_moments(x_ref + mx * sx, mp * sp, vx * sx * sx, vp * sp * sp,
                                          cxp * sx * sp)


def quadrature_det(params: ModelParams, t: float, kind=WignerKind.REDUCED, start: int = 128,
                   max_points: int = 2048, tol: float = 1e-8) -> tuple[float, int]:
    """Covariance determinant of a sampled field, doubling the resolution
    until successive values agree to ``tol`` (relative).  Returns (det, points)."""
    points = start
    prev = field_moments(wigner_field(params, default_phase_grid(params, t, points), t, kind)).det
    while points < max_points:
        points *= 2
        det = field_moments(wigner_field(params, default_phase_grid(params, t, points), t, kind)).det
        if abs(det - prev) <= tol * abs(det):
            return det, points
        prev = det
    return prev, points
