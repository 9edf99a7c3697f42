"""Uniform periodic coordinate grid with Fourier-space kinetic energy."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SpatialGrid",
    "build_grid",
    "apply_kinetic",
    "inner_product",
    "absorbing_mask",
]


class GridError(ValueError):
    """Invalid grid configuration."""


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SpatialGrid:
    """Coordinates r_j = r_min + j*dr, j = 0..n_points-1.

    ``k`` holds the conjugate momenta in numpy FFT order
    (0, dk, ..., -n/2*dk, ..., -dk), spanning [-pi/dr, pi/dr).
    """

    n_points: int
    dr: float
    r_min: float
    r: np.ndarray = field(init=False, repr=False, compare=False)
    k: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n_points, (int, np.integer)) or not _is_power_of_two(int(self.n_points)):
            raise GridError(f"n_points must be a power of two >= 2, got {self.n_points!r}")
        if not self.dr > 0:
            raise GridError(f"grid spacing dr must be positive, got {self.dr!r}")
        r = self.r_min + self.dr * np.arange(self.n_points)
        k = 2.0 * np.pi * np.fft.fftfreq(self.n_points, d=self.dr)
        r.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "k", k)

    @property
    def length(self) -> float:
        return self.n_points * self.dr

    @property
    def r_max(self) -> float:
        return self.r_min + (self.n_points - 1) * self.dr

    @property
    def k_max(self) -> float:
        return np.pi / self.dr

    @property
    def dk(self) -> float:
        return 2.0 * np.pi / self.length

    def kinetic_diagonal(self, mass: float) -> np.ndarray:
        return self.k**2 / (2.0 * mass)


def build_grid(n_points: int, dr: float, r_min: float | None = None) -> SpatialGrid:
    """Grid of ``n_points`` spaced ``dr``; centred on r = 0 when ``r_min`` is omitted."""
    if r_min is None:
        r_min = -(n_points // 2) * dr
    return SpatialGrid(n_points, float(dr), float(r_min))


def apply_kinetic(psi, g: SpatialGrid, mass: float):
    """T psi = IFFT[(k**2 / 2m) FFT(psi)] along the last axis."""
    psi = np.asarray(psi)
    if psi.shape[-1] != g.n_points:
        raise ValueError(f"wavefunction has {psi.shape[-1]} points, grid has {g.n_points}")
    if not mass > 0:
        raise ValueError(f"mass must be positive, got {mass!r}")
    return np.fft.ifft(g.kinetic_diagonal(mass) * np.fft.fft(psi, axis=-1), axis=-1)


def inner_product(a, b, g: SpatialGrid | None = None) -> complex:
    """<a|b> = dr * sum(conj(a) * b); unit weight when no grid is given (two-level systems)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch in inner product: {a.shape} vs {b.shape}")
    weight = 1.0 if g is None else g.dr
    return complex(weight * np.vdot(a, b))


def absorbing_mask(g: SpatialGrid, fraction: float) -> np.ndarray | None:
    """cos**2 ramp from 1 to 0 over ``fraction`` of the grid at each edge; None when fraction is 0."""
    if fraction == 0:
        return None
    if not 0 < fraction < 0.5:
        raise GridError(f"absorbing mask fraction must lie in [0, 0.5), got {fraction!r}")
    width = fraction * g.length
    left = g.r - g.r_min
    right = g.r_max - g.r
    dist = np.minimum(left, right)
    mask = np.ones(g.n_points)
    edge = dist < width
    mask[edge] = np.sin(0.5 * np.pi * dist[edge] / width) ** 2
    return mask
