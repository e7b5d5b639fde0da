"""Grid-based reference solver.

Each dressed branch obeys a scalar Schrodinger equation with Hamiltonian
p^2/2m + s*hbar*eps*k*x inside the cavity and p^2/2m afterwards, so no
two-component solver is needed.  Nothing here assumes the packet stays
Gaussian; that is what makes it a useful check on the closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .branches import BranchSign, _kinematics
from .errors import GridTooNarrow, NyquistOverflow
from .grids import Grid1D, Grid2D
from .model import HBAR, ModelParams, derive_scales, packet_spread

NORM_TOL = 1e-10
EDGE_POINTS = 4
EDGE_TOL = 1e-8


class Stage(Enum):
    IN_CAVITY = "in_cavity"
    FREE_FLIGHT = "free_flight"


@dataclass(frozen=True)
class CovarianceSummary:
    var_x: float
    var_p: float
    cov_xp: float
    det: float
    rho: float
    mean_x: float = 0.0
    mean_p: float = 0.0

    @classmethod
    def from_moments(cls, mean_x, mean_p, var_x, var_p, cov_xp, det=None):
        if det is None:
            det = var_x * var_p - cov_xp * cov_xp
        return cls(var_x=float(var_x), var_p=float(var_p), cov_xp=float(cov_xp), det=float(det),
                   rho=float(cov_xp / math.sqrt(var_x * var_p)),
                   mean_x=float(mean_x), mean_p=float(mean_p))


@dataclass(frozen=True)
class NumericState:
    grid: Grid1D
    amplitudes: np.ndarray
    time: float
    sign: Optional[BranchSign] = None

    def __post_init__(self):
        if self.amplitudes.shape != (self.grid.points,):
            raise ValueError("amplitude array does not match the grid")
        norm = self.norm()
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised (norm={norm!r})")

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.grid.dx)

    def momentum_amplitudes(self) -> np.ndarray:
        """psi(p) on ``grid.momenta`` (FFT order)."""
        g = self.grid
        return (np.fft.fft(self.amplitudes) * g.dx / math.sqrt(2.0 * math.pi * HBAR)
                * np.exp(-1j * g.wavenumbers * g.x_min))


def normalized(grid: Grid1D, amplitudes: np.ndarray, time: float,
               sign: Optional[BranchSign] = None) -> NumericState:
    amplitudes = np.asarray(amplitudes, dtype=complex)
    scale = math.sqrt(np.sum(np.abs(amplitudes) ** 2) * grid.dx)
    return NumericState(grid, amplitudes / scale, time, sign)


def default_grid(params: ModelParams, t_end: float, points: int = 4096,
                 margin: float = 10.0) -> Grid1D:
    """Lattice holding both branches from 0 to ``t_end`` with ``margin``
    packet widths of tail on either side."""
    c, _ = _kinematics(params, t_end)
    half = margin * packet_spread(params, t_end) + abs(c)
    return Grid1D(params.x0 - half, params.x0 + half, points)


def initial_state(params: ModelParams, grid: Grid1D, sign: int = BranchSign.PLUS) -> NumericState:
    dx0 = params.delta_x0
    if grid.x_min > params.x0 - 8 * dx0 or grid.x_max < params.x0 + 8 * dx0:
        raise GridTooNarrow("grid must span x0 +/- 8 delta_x0")
    x = grid.values
    psi = np.exp(-((x - params.x0) ** 2) / (4.0 * dx0 * dx0))
    return normalized(grid, psi, 0.0, BranchSign(sign))


def _check_edges(state: NumericState) -> None:
    dens = np.abs(state.amplitudes) ** 2 * state.grid.dx
    edge = dens[:EDGE_POINTS].sum() + dens[-EDGE_POINTS:].sum()
    if edge > EDGE_TOL:
        raise GridTooNarrow(f"probability {edge:.3g} within {EDGE_POINTS} points of the grid edge")


def _momentum_stats(state: NumericState) -> tuple[float, float]:
    w = np.abs(state.momentum_amplitudes()) ** 2
    w = w / w.sum()
    p = state.grid.momenta
    mean = float(np.dot(w, p))
    return mean, float(math.sqrt(max(np.dot(w, (p - mean) ** 2), 0.0)))


def propagate(state: NumericState, params: ModelParams, duration: float, steps: int,
              stage: Stage) -> NumericState:
    """Advance ``state`` by ``duration``.

    IN_CAVITY uses symmetric split-operator steps (half kinetic, potential,
    half kinetic) with V(x) = sign * hbar*eps*k*x.  FREE_FLIGHT is a single
    exact spectral step; ``steps`` is ignored there.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if duration < 0:
        raise ValueError("duration must be >= 0")
    stage = Stage(stage)
    g = state.grid
    _check_edges(state)

    p_mean, p_width = _momentum_stats(state)
    force = 0.0
    if stage is Stage.IN_CAVITY:
        if state.sign is None:
            raise ValueError("in-cavity propagation needs a branch sign")
        force = int(state.sign) * HBAR * params.epsilon * params.k
    p_end = p_mean - force * duration  # Ehrenfest, exact for a linear potential
    reach = max(abs(p_mean), abs(p_end)) + 8.0 * p_width
    if reach >= g.p_nyquist:
        raise NyquistOverflow(
            f"momentum support reaches {reach:.3e} kg m/s, grid Nyquist limit is {g.p_nyquist:.3e}")

    k = g.wavenumbers
    psi = state.amplitudes
    if stage is Stage.FREE_FLIGHT or duration == 0:
        psi = np.fft.ifft(np.fft.fft(psi) * np.exp(-1j * HBAR * k * k * duration / (2.0 * params.mass)))
    else:
        dt = duration / steps
        half_kin = np.exp(-1j * HBAR * k * k * dt / (4.0 * params.mass))
        full_kin = half_kin * half_kin
        pot = np.exp(-1j * (force / HBAR) * g.values * dt)
        psi = np.fft.ifft(np.fft.fft(psi) * half_kin)
        for i in range(steps):
            psi = psi * pot
            psi = np.fft.fft(psi)
            psi = np.fft.ifft(psi * (half_kin if i == steps - 1 else full_kin))
    out = replace(state, amplitudes=psi, time=state.time + duration)
    _check_edges(out)
    return out


def evolve_branch(params: ModelParams, sign: int, grid: Grid1D, t: float,
                  steps_per_transit: int = 2048) -> NumericState:
    """Initial packet -> cavity transit -> free flight up to time ``t``."""
    T = params.transit_time
    state = initial_state(params, grid, sign)
    t_in = min(t, T)
    if t_in > 0:
        steps = max(1, math.ceil(steps_per_transit * t_in / T))
        state = propagate(state, params, t_in, steps, Stage.IN_CAVITY)
    if t > T:
        state = propagate(state, params, t - T, 1, Stage.FREE_FLIGHT)
    return state


def wigner_transform(state: NumericState, p_grid: Grid1D, x_stride: int = 1):
    """W(x, p) = (1/pi hbar) sum_j psi(x + j dx) psi*(x - j dx) exp(-2i p j dx / hbar) dx.

    Rows are every ``x_stride``-th point of the state grid.  Returns a
    :class:`~sgqe.phase_space.WignerField` of unspecified kind.
    """
    from .phase_space import WignerField

    g = state.grid
    if max(abs(p_grid.x_min), abs(p_grid.x_max)) > 0.5 * g.p_nyquist:
        raise NyquistOverflow("momentum grid exceeds pi*hbar/(2 dx) of the state grid")
    if g.points % x_stride:
        raise ValueError("x_stride must divide the number of grid points")
    psi = state.amplitudes
    n_pts = g.points
    dens = np.abs(psi) ** 2
    support = np.nonzero(dens > 1e-30 * dens.max())[0]
    lo, hi = int(support[0]), int(support[-1])
    rows = np.arange(0, n_pts, x_stride)
    j_max = hi - lo
    j = np.arange(j_max + 1)

    corr = np.zeros((rows.size, j.size), dtype=complex)
    for r, n in enumerate(rows):
        if n < lo or n > hi:
            continue
        jn = min(n - lo, hi - n)
        corr[r, :jn + 1] = psi[n:n + jn + 1] * np.conj(psi[n - jn:n + 1][::-1])
    kernel = np.exp(-2j * np.outer(j * g.dx, p_grid.values) / HBAR)
    kernel[1:] *= 2.0
    w = (corr @ kernel).real * (g.dx / (math.pi * HBAR))
    x_grid = Grid1D(g.x_min, g.x_max, g.points // x_stride)
    return WignerField(grid=Grid2D(x_grid, p_grid), values=w, kind=None, time=state.time)


def moments(state: NumericState) -> CovarianceSummary:
    """Means and symmetrised second moments; p-dependent terms are evaluated spectrally."""
    g = state.grid
    psi = state.amplitudes
    dens = np.abs(psi) ** 2 * g.dx
    x = g.values
    mean_x = float(np.dot(dens, x))
    u = x - mean_x
    var_x = float(np.dot(dens, u * u))

    phi = np.fft.fft(psi)
    pk = g.momenta
    wp = np.abs(phi) ** 2
    wp = wp / wp.sum()
    mean_p = float(np.dot(wp, pk))
    var_p = float(np.dot(wp, (pk - mean_p) ** 2))
    p_psi = np.fft.ifft((pk - mean_p) * phi)
    cov = float(np.real(np.sum(np.conj(u * psi) * p_psi) * g.dx))
    return CovarianceSummary.from_moments(mean_x, mean_p, var_x, var_p, cov)


def mixture_moments(summaries: Sequence[CovarianceSummary],
                    weights: Sequence[float]) -> CovarianceSummary:
    """Second moments of the incoherent mixture sum_i w_i rho_i."""
    w = np.asarray(weights, dtype=float)
    w = w / w.sum()
    mx = sum(wi * s.mean_x for wi, s in zip(w, summaries))
    mp = sum(wi * s.mean_p for wi, s in zip(w, summaries))
    vx = sum(wi * (s.var_x + (s.mean_x - mx) ** 2) for wi, s in zip(w, summaries))
    vp = sum(wi * (s.var_p + (s.mean_p - mp) ** 2) for wi, s in zip(w, summaries))
    cxp = sum(wi * (s.cov_xp + (s.mean_x - mx) * (s.mean_p - mp)) for wi, s in zip(w, summaries))
    return CovarianceSummary.from_moments(mx, mp, vx, vp, cxp)
