"""JSON scenario configuration.

Lengths may be given in metres or relative to the mode wavelength, times
in seconds or relative to the transit time T, momenta in kg m/s or in
units of hbar*k.  When both forms of one input are present they must
agree; the SI value is then used.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import SGQEError
from .grids import Grid1D
from .measurement import MeasurementOutcome
from .model import HBAR, ModelParams, validate
from .oracle import default_grid
from .phase_space import default_phase_grid

AGREE_RTOL = 1e-9

REFERENCE_DEFAULTS = {
    "mass_kg": 1e-26,
    "epsilon_per_s": 1e8,
    "lambda_m": 1e-5,
    "delta_x0_over_lambda": 0.1,
    "x0_over_lambda": 0.01,
    "t_over_T": 10.0,
}


class ConfigError(SGQEError, ValueError):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    params: ModelParams
    t: float
    grid: Grid1D
    p_grid: Grid1D
    outcome: MeasurementOutcome = MeasurementOutcome.ZERO_PHOTONS
    wigner_x_points: int = 512
    grid_given: bool = False
    outputs: dict = field(default_factory=dict)

    @property
    def t_over_T(self) -> float:
        return self.t / self.params.transit_time

    def resolved(self) -> dict:
        """Every input in SI and relative units, for output headers."""
        p = self.params
        lam = p.wavelength
        hk = HBAR * p.k
        return {
            "mass_kg": p.mass,
            "epsilon_per_s": p.epsilon,
            "lambda_m": lam,
            "omega_per_s": p.omega,
            "delta_x0_m": p.delta_x0,
            "delta_x0_over_lambda": p.delta_x0 / lam,
            "x0_m": p.x0,
            "x0_over_lambda": p.x0 / lam,
            "transit_time_s": p.transit_time,
            "epsilon_T": p.epsilon_T,
            "t_s": self.t,
            "t_over_T": self.t_over_T,
            "grid": {"x_min_over_lambda": self.grid.x_min / lam,
                     "x_max_over_lambda": self.grid.x_max / lam, "points": self.grid.points},
            "p_grid": {"p_min_over_hbar_k": self.p_grid.x_min / hk,
                       "p_max_over_hbar_k": self.p_grid.x_max / hk, "points": self.p_grid.points},
            "wigner_x_points": self.wigner_x_points,
            "outcome": self.outcome.value,
        }


def _pick(doc: dict, si_key: str, rel_key: str, unit: float, default_rel=None) -> Optional[float]:
    si = doc.get(si_key)
    rel = doc.get(rel_key)
    if si is not None and rel is not None:
        if not math.isclose(float(si), float(rel) * unit, rel_tol=AGREE_RTOL, abs_tol=0.0):
            raise ConfigError(f"{si_key}={si!r} contradicts {rel_key}={rel!r}")
        return float(si)
    if si is not None:
        return float(si)
    if rel is not None:
        return float(rel) * unit
    return None if default_rel is None else float(default_rel) * unit


def _number(doc: dict, key: str) -> float:
    try:
        return float(doc.get(key, REFERENCE_DEFAULTS.get(key)))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be a number") from exc


def config_from_dict(doc: dict) -> ScenarioConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    mass = _number(doc, "mass_kg")
    epsilon = _number(doc, "epsilon_per_s")
    lam = _number(doc, "lambda_m")
    omega = float(doc.get("omega_per_s", 0.0))
    delta_x0 = _pick(doc, "delta_x0_m", "delta_x0_over_lambda", lam,
                     REFERENCE_DEFAULTS["delta_x0_over_lambda"])
    x0 = _pick(doc, "x0_m", "x0_over_lambda", lam, REFERENCE_DEFAULTS["x0_over_lambda"])
    if epsilon <= 0:
        raise ConfigError("epsilon_per_s must be > 0")
    T = _pick(doc, "transit_time_s", "epsilon_T", 1.0 / epsilon)
    if T is None:
        raise ConfigError("one of transit_time_s or epsilon_T is required")
    params = validate(ModelParams(mass=mass, epsilon=epsilon, wavelength=lam, delta_x0=delta_x0,
                                  x0=x0, transit_time=T, omega=omega))
    t = _pick(doc, "t_s", "t_over_T", T, REFERENCE_DEFAULTS["t_over_T"])
    if t < 0:
        raise ConfigError("evaluation time must be >= 0")

    try:
        gdoc = doc.get("grid")
        if gdoc:
            grid = Grid1D(_pick(gdoc, "x_min_m", "x_min_over_lambda", lam),
                          _pick(gdoc, "x_max_m", "x_max_over_lambda", lam),
                          int(gdoc.get("points", 4096)))
        else:
            grid = default_grid(params, max(t, T), 4096)
        wx = int(doc.get("wigner_x_points", min(512, grid.points)))
        pdoc = doc.get("p_grid")
        if pdoc:
            hk = HBAR * params.k
            p_grid = Grid1D(_pick(pdoc, "p_min", "p_min_over_hbar_k", hk),
                            _pick(pdoc, "p_max", "p_max_over_hbar_k", hk),
                            int(pdoc.get("points", 512)))
        else:
            p_grid = default_phase_grid(params, max(t, T), 512).p
        Grid1D(grid.x_min, grid.x_max, wx)
    except TypeError as exc:
        raise ConfigError(f"incomplete grid specification: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if grid.points % wx:
        raise ConfigError("wigner_x_points must divide grid.points")

    try:
        outcome = MeasurementOutcome(doc.get("outcome", "zero"))
    except ValueError as exc:
        raise ConfigError("outcome must be one of zero, one, none") from exc
    return ScenarioConfig(params=params, t=t, grid=grid, p_grid=p_grid, outcome=outcome,
                          wigner_x_points=wx, grid_given=bool(gdoc),
                          outputs=dict(doc.get("outputs", {})))


def load_config(path) -> ScenarioConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return config_from_dict(doc)


def figure_preset(which: int) -> dict:
    """Configuration document reproducing one of the three reference regimes at t = 10 T."""
    eps_T = {2: 0.3, 3: 3.0, 4: 30.0}[int(which)]
    doc = dict(REFERENCE_DEFAULTS)
    doc["epsilon_T"] = eps_T
    doc["grid"] = {"x_min_over_lambda": -1.2, "x_max_over_lambda": 1.2, "points": 4096}
    half = eps_T + 8.0 / (4.0 * math.pi * 0.1)  # 8 dp0 in units of hbar k
    doc["p_grid"] = {"p_min_over_hbar_k": -half, "p_max_over_hbar_k": half, "points": 512}
    doc["outcome"] = "zero"
    return doc
