"""Physical parameters of the atom/cavity configuration and the scalar
quantities derived from them.

All quantities are SI.  The mode frequency ``omega`` only contributes a
global phase and is carried for completeness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameter, NegativeTime

#: Reduced Planck constant, CODATA 2018 (J s).
HBAR = 1.054571817e-34


@dataclass(frozen=True)
class ModelParams:
    mass: float
    epsilon: float
    wavelength: float
    delta_x0: float
    x0: float
    transit_time: float
    omega: float = 0.0

    @property
    def k(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def epsilon_T(self) -> float:
        return self.epsilon * self.transit_time


@dataclass(frozen=True)
class DerivedScales:
    k: float
    a: float
    delta_p0: float
    epsilon_T: float


def reference_params(epsilon_T: float = 3.0, x0_over_lambda: float = 0.01,
                 delta_x0_over_lambda: float = 0.1) -> ModelParams:
    """Reference configuration: m = 1e-26 kg, eps = 1e8 /s, lambda = 1e-5 m."""
    wavelength = 1e-5
    epsilon = 1e8
    return ModelParams(
        mass=1e-26,
        epsilon=epsilon,
        wavelength=wavelength,
        delta_x0=delta_x0_over_lambda * wavelength,
        x0=x0_over_lambda * wavelength,
        transit_time=epsilon_T / epsilon,
    )


def validate(params: ModelParams) -> ModelParams:
    for name in ("mass", "epsilon", "wavelength", "delta_x0", "transit_time"):
        value = getattr(params, name)
        if not (math.isfinite(value) and value > 0):
            raise InvalidParameter(name, f"must be finite and > 0, got {value!r}")
    if not math.isfinite(params.x0):
        raise InvalidParameter("x0", "must be finite")
    quarter = params.wavelength / 4.0
    # packet must sit inside the region where the mode is linear in x
    if params.delta_x0 >= quarter:
        raise InvalidParameter("delta_x0", f"must be < lambda/4 = {quarter!r} m")
    if abs(params.x0) > quarter:
        raise InvalidParameter("x0", f"|x0| must be <= lambda/4 = {quarter!r} m")
    return params


def derive_scales(params: ModelParams) -> DerivedScales:
    validate(params)
    k = params.k
    return DerivedScales(
        k=k,
        a=HBAR * params.epsilon * k / params.mass,
        delta_p0=HBAR / (2.0 * params.delta_x0),
        epsilon_T=params.epsilon * params.transit_time,
    )


def _check_time(t: float) -> None:
    if t < 0:
        raise NegativeTime(t)


def packet_spread(params: ModelParams, t: float) -> float:
    """Free-particle position width at time ``t``."""
    _check_time(t)
    dp0 = derive_scales(params).delta_p0
    return math.hypot(params.delta_x0, dp0 * t / params.mass)


def correlation_coefficient(params: ModelParams, t: float) -> float:
    """Position/momentum correlation of a freely spreading minimum-uncertainty packet."""
    _check_time(t)
    dp0 = derive_scales(params).delta_p0
    return dp0 * t / (params.mass * packet_spread(params, t))
