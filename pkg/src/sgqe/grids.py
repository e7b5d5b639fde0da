"""Uniform sampling lattices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.integrate import trapezoid

from .model import HBAR


@dataclass(frozen=True)
class Grid1D:
    """``points`` samples starting at ``x_min`` with spacing ``(x_max - x_min) / points``.

    The right end is excluded so the lattice is periodic, which is what the
    spectral transforms expect.
    """

    x_min: float
    x_max: float
    points: int

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise ValueError(f"x_max ({self.x_max!r}) must exceed x_min ({self.x_min!r})")
        n = int(self.points)
        if n != self.points or n < 64 or n & (n - 1):
            raise ValueError(f"points must be a power of two >= 64, got {self.points!r}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.points

    @cached_property
    def values(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.points)

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Angular wavenumbers in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.points, d=self.dx)

    @property
    def momenta(self) -> np.ndarray:
        return HBAR * self.wavenumbers

    @property
    def p_nyquist(self) -> float:
        return np.pi * HBAR / self.dx

    def integrate(self, f: np.ndarray, axis: int = -1) -> np.ndarray:
        return trapezoid(f, dx=self.dx, axis=axis)

    def to_dict(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "points": self.points}


@dataclass(frozen=True)
class Grid2D:
    """Phase-space lattice: rows are positions, columns momenta."""

    x: Grid1D
    p: Grid1D

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x.values, self.p.values, indexing="ij")

    def integrate(self, f: np.ndarray) -> float:
        return float(self.x.integrate(self.p.integrate(f, axis=1), axis=0))
