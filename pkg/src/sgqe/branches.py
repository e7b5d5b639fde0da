"""Closed-form translational branches phi^+/- of the dressed-state paths.

Inside the cavity (0 <= t <= T) each branch is a minimum-uncertainty
Gaussian accelerated by the linear potential +/- hbar*eps*k*x; after the
exit it moves freely.  Branch-independent global phases are dropped in
both representations; :func:`dropped_phase` returns what was removed, for
comparisons against a propagated wavefunction.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .model import HBAR, ModelParams, _check_time, derive_scales


class BranchSign(IntEnum):
    """Dressed state |chi+> (+1) or |chi-> (-1)."""

    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class BranchCenters:
    x_c: float
    p_c: float


def _kinematics(params: ModelParams, t: float) -> tuple[float, float]:
    """Return (c, tau): the unsigned centre displacement and the effective
    interaction time min(t, T)."""
    sc = derive_scales(params)
    T = params.transit_time
    if t <= T:
        return 0.5 * sc.a * t * t, t
    return sc.a * T * (t - 0.5 * T), T


def _beta(params: ModelParams, t: float) -> complex:
    return complex(params.delta_x0 ** 2, HBAR * t / (2.0 * params.mass))


def branch_centers(params: ModelParams, sign: int, t: float) -> BranchCenters:
    _check_time(t)
    s = int(BranchSign(sign))
    c, tau = _kinematics(params, t)
    p_kick = params.mass * derive_scales(params).a * tau
    return BranchCenters(x_c=params.x0 - s * c, p_c=-s * p_kick)


def branch_x_amplitude(params: ModelParams, sign: int, x, t: float):
    """phi^s(x, t) in 1/sqrt(m).  ``x`` may be a scalar or an array."""
    _check_time(t)
    s = int(BranchSign(sign))
    c, tau = _kinematics(params, t)
    beta = _beta(params, t)
    kappa = params.epsilon * params.k * tau  # m*a*tau/hbar
    pref = cmath.sqrt(params.delta_x0 / (math.sqrt(2.0 * math.pi) * beta))
    x = np.asarray(x, dtype=float)
    u = x - (params.x0 - s * c)
    return pref * np.exp(-u * u / (4.0 * beta) - 1j * s * kappa * x)


def _initial_p_amplitude(params: ModelParams, p: np.ndarray) -> np.ndarray:
    dp0 = derive_scales(params).delta_p0
    norm = (2.0 * math.pi * dp0 * dp0) ** -0.25
    return norm * np.exp(-p * p / (4.0 * dp0 * dp0) - 1j * p * (params.x0 / HBAR))


def branch_p_amplitude(params: ModelParams, sign: int, p, t: float):
    """phi^s(p, t) in 1/sqrt(kg m/s), with the phase convention of
    :func:`branch_x_amplitude` (the two are related by the unitary Fourier
    transform with kernel exp(-i p x / hbar) / sqrt(2 pi hbar))."""
    _check_time(t)
    s = int(BranchSign(sign))
    m = params.mass
    T = params.transit_time
    force = s * m * derive_scales(params).a
    tau = min(t, T)
    p = np.asarray(p, dtype=float)
    q = p / HBAR
    # exp(-i (p^2 tau + F p tau^2) / (2 m hbar))
    phase = -(q * q * HBAR * tau + q * force * tau * tau) / (2.0 * m)
    if t > T:
        free = t - T
        phase = phase - q * q * HBAR * free / (2.0 * m) + (force * T) ** 2 * free / (2.0 * m * HBAR)
    return _initial_p_amplitude(params, p + force * tau) * np.exp(1j * phase)


def dropped_phase(params: ModelParams, t: float) -> float:
    """Branch-independent phase (rad) omitted by the closed forms, excluding
    exp(-i omega t).  Multiplying a closed-form amplitude by exp(1j * this)
    gives the exact solution of i hbar d/dt phi = (p^2/2m +/- hbar eps k x) phi."""
    _check_time(t)
    m = params.mass
    a = derive_scales(params).a
    T = params.transit_time
    tau = min(t, T)
    phase = -m * a * a * tau ** 3 / (6.0 * HBAR)
    if t > T:
        phase -= m * (a * T) ** 2 * (t - T) / (2.0 * HBAR)
    return phase


def branch_overlap(params: ModelParams, t: float) -> complex:
    """<phi+(t)|phi-(t)> evaluated as a Gaussian integral.

    The modulus equals exp(-D(t)^2 / 8); the phase is 2 eps k x0 min(t, T).
    """
    _check_time(t)
    if t == 0:
        return 1.0 + 0.0j
    c, tau = _kinematics(params, t)
    beta = _beta(params, t)
    abs_beta2 = abs(beta) ** 2
    kappa = params.epsilon * params.k * tau
    curvature = params.delta_x0 ** 2 / (2.0 * abs_beta2)
    b = 2.0 * kappa - c * HBAR * t / (2.0 * params.mass * abs_beta2)
    log_mod = -c * c * curvature - b * b / (4.0 * curvature)
    return cmath.exp(complex(log_mod, 2.0 * kappa * params.x0))
