"""Two-component Hamiltonian for two-level and two-surface systems.

The spinor is ordered (psi_e, psi_g) and evolves under

    i d/dt (psi_e, psi_g) = [[H_e, -mu E], [-mu E*, H_g]] (psi_e, psi_g)

with H_i = T + V_i on a Fourier grid (TPS) or a scalar level (TLS).
Internally the spinor is a complex array of shape (2, n) with row 0 = excited
and row 1 = ground.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .grid import SpatialGrid, inner_product

__all__ = [
    "SystemModel",
    "TwoComponentState",
    "apply_hamiltonian",
    "hamiltonian_matrix",
    "initial_gaussian",
    "initial_tls",
    "make_tls",
    "make_tps",
    "EXCITED",
    "GROUND",
]

EXCITED = 0
GROUND = 1

DEFAULT_MASS = 1836.0


@dataclass(frozen=True)
class SystemModel:
    kind: str
    v_ground: np.ndarray
    v_excited: np.ndarray
    mu: float = 1.0
    mass: Optional[float] = None
    grid: Optional[SpatialGrid] = None
    _kinetic: Optional[np.ndarray] = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("tls", "tps"):
            raise ValueError(f"model kind must be 'tls' or 'tps', got {self.kind!r}")
        vg = np.atleast_1d(np.asarray(self.v_ground, dtype=float))
        ve = np.atleast_1d(np.asarray(self.v_excited, dtype=float))
        if self.kind == "tls":
            if vg.shape != (1,) or ve.shape != (1,):
                raise ValueError("two-level model takes scalar levels")
        else:
            if self.grid is None:
                raise ValueError("two-surface model needs a grid")
            if vg.shape != (self.grid.n_points,) or ve.shape != (self.grid.n_points,):
                raise ValueError("potential samples must match the grid length")
            if self.mass is None or not self.mass > 0:
                raise ValueError(f"mass must be positive, got {self.mass!r}")
            object.__setattr__(self, "_kinetic", self.grid.kinetic_diagonal(self.mass))
        if not np.isfinite(self.mu):
            raise ValueError("transition dipole must be finite")
        vg.setflags(write=False)
        ve.setflags(write=False)
        object.__setattr__(self, "v_ground", vg)
        object.__setattr__(self, "v_excited", ve)

    @property
    def size(self) -> int:
        return 1 if self.kind == "tls" else self.grid.n_points

    @property
    def weight(self) -> float:
        """Quadrature weight of the inner product."""
        return 1.0 if self.grid is None else self.grid.dr

    @property
    def kinetic_max(self) -> float:
        return 0.0 if self._kinetic is None else float(self._kinetic.max())

    def apply_kinetic(self, psi):
        if self._kinetic is None:
            return np.zeros_like(psi)
        return np.fft.ifft(self._kinetic * np.fft.fft(psi, axis=-1), axis=-1)

    def apply_surface(self, psi, which: int):
        """H_e psi (which=EXCITED) or H_g psi (which=GROUND) for a single component."""
        v = self.v_excited if which == EXCITED else self.v_ground
        out = v * psi
        if self._kinetic is not None:
            out = out + np.fft.ifft(self._kinetic * np.fft.fft(psi))
        return out

    def apply(self, spinor: np.ndarray, field_value: complex) -> np.ndarray:
        """H spinor for a (2, n) array at fixed field value."""
        coupling = self.mu * field_value
        out = np.empty_like(spinor)
        out[EXCITED] = self.v_excited * spinor[EXCITED] - coupling * spinor[GROUND]
        out[GROUND] = self.v_ground * spinor[GROUND] - np.conj(coupling) * spinor[EXCITED]
        if self._kinetic is not None:
            out += np.fft.ifft(self._kinetic * np.fft.fft(spinor, axis=-1), axis=-1)
        return out

    def inner(self, a, b) -> complex:
        return inner_product(a, b, self.grid)


@dataclass
class TwoComponentState:
    psi_g: np.ndarray
    psi_e: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.psi_g = np.asarray(self.psi_g, dtype=complex)
        self.psi_e = np.asarray(self.psi_e, dtype=complex)
        if self.psi_g.shape != self.psi_e.shape:
            raise ValueError(f"component shapes differ: {self.psi_g.shape} vs {self.psi_e.shape}")

    def spinor(self) -> np.ndarray:
        return np.stack([self.psi_e, self.psi_g])

    @classmethod
    def from_spinor(cls, spinor, t: float = 0.0) -> "TwoComponentState":
        return cls(psi_g=spinor[GROUND].copy(), psi_e=spinor[EXCITED].copy(), t=t)


def _check_state(state: TwoComponentState, m: SystemModel):
    if state.psi_g.shape != (m.size,):
        raise ValueError(f"state has {state.psi_g.shape[0]} points, model expects {m.size}")


def apply_hamiltonian(state: TwoComponentState, m: SystemModel, field_value: complex) -> TwoComponentState:
    """H psi as a two-component vector (time left unchanged)."""
    _check_state(state, m)
    return TwoComponentState.from_spinor(m.apply(state.spinor(), field_value), t=state.t)


def hamiltonian_matrix(m: SystemModel, field_value: complex) -> np.ndarray:
    """Dense (2n, 2n) Hamiltonian in the (psi_e, psi_g) block layout."""
    n = m.size
    if m.kind == "tls":
        te = np.array([[m.v_excited[0]]], dtype=complex)
        tg = np.array([[m.v_ground[0]]], dtype=complex)
    else:
        # kinetic matrix from the FFT basis, T = F^-1 diag(k^2/2m) F
        eye = np.eye(n)
        kin = np.fft.ifft(m._kinetic[:, None] * np.fft.fft(eye, axis=0), axis=0)
        te = kin + np.diag(m.v_excited)
        tg = kin + np.diag(m.v_ground)
    c = m.mu * field_value
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    h[:n, :n] = te
    h[n:, n:] = tg
    h[:n, n:] = -c * np.eye(n)
    h[n:, :n] = -np.conj(c) * np.eye(n)
    return h


def make_tls(omega_eg: float = 0.0, mu: float = 1.0) -> SystemModel:
    if not mu >= 0:
        raise ValueError(f"transition dipole must be non-negative, got {mu!r}")
    return SystemModel("tls", v_ground=[0.0], v_excited=[omega_eg], mu=mu)


def make_tps(g: SpatialGrid, slope: float = -2.0, mass: float = DEFAULT_MASS, mu: float = 1.0) -> SystemModel:
    """Flat ground surface V_g = 0 and linear excited surface V_e = slope * r."""
    return SystemModel(
        "tps",
        v_ground=np.zeros(g.n_points),
        v_excited=slope * g.r,
        mu=mu,
        mass=mass,
        grid=g,
    )


def initial_tls() -> TwoComponentState:
    return TwoComponentState(psi_g=np.array([1.0 + 0j]), psi_e=np.array([0.0 + 0j]))


def initial_gaussian(g: SpatialGrid, center: float = 0.0, width: float = 0.1) -> TwoComponentState:
    """Ground-surface Gaussian exp[-(r - center)**2 / (2 width**2)], unit norm; empty excited surface."""
    if not width > 0:
        raise ValueError(f"wavepacket width must be positive, got {width!r}")
    if not g.r_min <= center <= g.r_max:
        raise ValueError(f"wavepacket center {center!r} lies outside the grid [{g.r_min}, {g.r_max}]")
    psi = np.exp(-0.5 * ((g.r - center) / width) ** 2).astype(complex)
    psi /= np.sqrt(inner_product(psi, psi, g).real)
    return TwoComponentState(psi_g=psi, psi_e=np.zeros_like(psi))
