"""Chebychev polynomial propagator for the coupled two-component TDSE.

Each step freezes the field at the step midpoint and applies

    exp(-i H dt) = exp(-i E_c dt) * sum_n a_n T_n(H_norm),
    a_n = (2 - delta_n0) (-i)^n J_n(dE dt / 2),

with H_norm = (2H - (e_max + e_min)) / (e_max - e_min) and the T_n(H_norm) psi
built from the three-term recurrence.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .bessel import bessel_j_sequence
from .grid import absorbing_mask
from .models import EXCITED, SystemModel, TwoComponentState, hamiltonian_matrix

logger = logging.getLogger(__name__)

__all__ = [
    "ChebychevPlan",
    "PropagationSchedule",
    "PropagationError",
    "CapacityError",
    "estimate_bounds",
    "make_plan",
    "chebychev_step",
    "chebychev_apply",
    "dense_exponential_step",
    "propagate",
    "surface_propagator",
]

TRUNCATION_TOL = 1e-14
BOUND_MARGIN = 0.10
NORM_TOL = 1e-8
DENSE_LIMIT = 512


class PropagationError(RuntimeError):
    """Raised when a step fails; ``step`` holds the failing step index when known."""

    def __init__(self, message: str, step: Optional[int] = None):
        super().__init__(message if step is None else f"step {step}: {message}")
        self.step = step


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class PropagationSchedule:
    dt: float = 4.0 * math.pi / 10.0
    n_steps: int = 200
    record_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"time step must be positive, got {self.dt!r}")
        if not (isinstance(self.n_steps, (int, np.integer)) and self.n_steps >= 1):
            raise ValueError(f"n_steps must be an integer >= 1, got {self.n_steps!r}")
        if not (isinstance(self.record_stride, (int, np.integer)) and self.record_stride >= 1):
            raise ValueError(f"record_stride must be an integer >= 1, got {self.record_stride!r}")

    @property
    def duration(self) -> float:
        return self.n_steps * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.n_steps + 1)


@dataclass(frozen=True)
class ChebychevPlan:
    e_min: float
    e_max: float
    dt: float
    coefficients: np.ndarray

    @property
    def n_terms(self) -> int:
        return len(self.coefficients)

    @property
    def center(self) -> float:
        return 0.5 * (self.e_max + self.e_min)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.e_max - self.e_min)


def estimate_bounds(m: SystemModel, peak_coupling: float) -> tuple[float, float]:
    """Gershgorin-type spectral enclosure of H for any field with |mu E| <= peak_coupling."""
    c = abs(peak_coupling)
    v_all = np.concatenate([m.v_ground, m.v_excited])
    e_min = float(v_all.min()) - c
    e_max = float(v_all.max()) + m.kinetic_max + c
    return e_min, e_max


def make_plan(e_min: float, e_max: float, dt: float, tol: Optional[float] = None) -> ChebychevPlan:
    """Chebychev coefficients for exp(-i H dt) with spectrum in [e_min, e_max].

    The interval is widened by ``BOUND_MARGIN`` of its width (half on each
    side) and never allowed to collapse to a point.
    """
    if tol is None:
        tol = TRUNCATION_TOL
    width = e_max - e_min
    pad = 0.5 * BOUND_MARGIN * max(width, 1e-3 * max(1.0, abs(e_min), abs(e_max)))
    lo, hi = e_min - pad, e_max + pad
    alpha = 0.5 * (hi - lo) * dt
    n_guess = int(abs(alpha)) + 40 + int(10.0 * math.sqrt(abs(alpha)))
    j = bessel_j_sequence(alpha, n_guess)
    mags = np.abs(j) * 2.0
    mags[0] = abs(j[0])
    big = mags.max()
    # keep terms up to the last one above tol past the turning point n ~ |alpha|
    above = np.nonzero(mags >= tol * big)[0]
    n_terms = max(int(above[-1]) + 1, 2)
    n = np.arange(n_terms)
    coeffs = (2.0 - (n == 0)) * (-1j) ** n * j[:n_terms]
    coeffs = coeffs * np.exp(-1j * 0.5 * (hi + lo) * dt)
    return ChebychevPlan(lo, hi, dt, coeffs)


def chebychev_apply(apply_h: Callable[[np.ndarray], np.ndarray], psi: np.ndarray, plan: ChebychevPlan) -> np.ndarray:
    """sum_n a_n T_n(H_norm) psi for an arbitrary Hermitian operator ``apply_h``."""
    center = plan.center
    scale = 1.0 / plan.half_width

    def h_norm(v):
        return (apply_h(v) - center * v) * scale

    a = plan.coefficients
    phi_prev = psi
    phi = h_norm(psi)
    out = a[0] * phi_prev + a[1] * phi
    for coef in a[2:]:
        phi_next = 2.0 * h_norm(phi) - phi_prev
        out += coef * phi_next
        phi_prev, phi = phi, phi_next
    return out


def _is_diagonal(m: SystemModel, field_value: complex) -> bool:
    return m.kind == "tls" and m.mu * field_value == 0


def chebychev_step(state: TwoComponentState, m: SystemModel, field_value: complex, plan: ChebychevPlan) -> TwoComponentState:
    """exp(-i H(field_value) plan.dt) applied to ``state``."""
    spinor = _step_spinor(state.spinor(), m, field_value, plan)
    return TwoComponentState.from_spinor(spinor, t=state.t + plan.dt)


def _step_spinor(spinor: np.ndarray, m: SystemModel, field_value: complex, plan: ChebychevPlan) -> np.ndarray:
    if _is_diagonal(m, field_value):
        # uncoupled two-level system: the exact phase, no polynomial needed
        levels = np.array([m.v_excited[0], m.v_ground[0]])[:, None]
        return np.exp(-1j * levels * plan.dt) * spinor
    return chebychev_apply(lambda v: m.apply(v, field_value), spinor, plan)


def dense_exponential_step(state: TwoComponentState, m: SystemModel, field_value: complex, dt: float) -> TwoComponentState:
    """Exact exp(-i H dt) by eigendecomposition of the dense Hamiltonian (validation oracle)."""
    n = m.size
    if 2 * n > DENSE_LIMIT:
        raise CapacityError(f"dense exponential limited to dimension {DENSE_LIMIT}, got {2 * n}")
    h = hamiltonian_matrix(m, field_value)
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    vec = np.concatenate([state.psi_e, state.psi_g])
    out = v @ (np.exp(-1j * w * dt) * (v.conj().T @ vec))
    return TwoComponentState(psi_g=out[n:], psi_e=out[:n], t=state.t + dt)


def surface_propagator(m: SystemModel, dt: float, which: int = EXCITED) -> Callable[[np.ndarray], np.ndarray]:
    """exp(-i H_i dt) for a single surface, with the coupling switched off."""
    v = m.v_excited if which == EXCITED else m.v_ground
    if m.kind == "tls":
        phase = np.exp(-1j * v[0] * dt)
        return lambda psi: phase * psi
    plan = make_plan(float(v.min()), float(v.max()) + m.kinetic_max, dt)
    return lambda psi: chebychev_apply(lambda x: m.apply_surface(x, which), psi, plan)


def _norm2(m: SystemModel, spinor: np.ndarray) -> float:
    return m.weight * float(np.vdot(spinor, spinor).real)


def propagate(
    state0: TwoComponentState,
    m: SystemModel,
    pulse,
    sched: PropagationSchedule,
    observer: Optional[Callable[[int, TwoComponentState, complex], None]] = None,
    mask_fraction: float = 0.0,
    time_unit: Optional[float] = None,
):
    """Propagate ``state0`` through ``sched`` under ``pulse`` and return the recorded trajectory.

    The field is frozen at each step midpoint.  A record (and the optional
    ``observer(step, state, field_value)`` callback, with the field at the
    record time) is produced at step 0, every ``record_stride`` steps and at
    the final step.
    """
    from .observables import make_record

    if m.kind == "tps" and mask_fraction:
        mask = absorbing_mask(m.grid, mask_fraction)
    else:
        mask = None
    if time_unit is None:
        time_unit = getattr(pulse, "time_unit", 1.0)
    tau = getattr(pulse, "tau", None)
    if tau is not None and sched.dt > 0.01 * tau:
        logger.warning("time step %.4g exceeds 1%% of the pulse duration %.4g", sched.dt, tau)

    e_min, e_max = estimate_bounds(m, m.mu * pulse.peak_amplitude)
    plan = make_plan(e_min, e_max, sched.dt)
    logger.debug("chebychev plan: bounds [%.4g, %.4g], %d terms", plan.e_min, plan.e_max, plan.n_terms)

    spinor = state0.spinor()
    t0 = state0.t
    records = []

    def emit(step, t):
        state = TwoComponentState.from_spinor(spinor, t=t)
        e_t = complex(pulse.field(t))
        records.append(make_record(step, state, m, e_t, pulse, time_unit))
        if observer is not None:
            observer(step, state, e_t)

    emit(0, t0)
    for step in range(1, sched.n_steps + 1):
        t_prev = t0 + (step - 1) * sched.dt
        e_mid = complex(pulse.field(t_prev + 0.5 * sched.dt))
        before = _norm2(m, spinor)
        spinor = _step_spinor(spinor, m, e_mid, plan)
        after = _norm2(m, spinor)
        if not np.isfinite(after) or abs(after - before) > NORM_TOL * max(before, 1.0):
            raise PropagationError(f"norm changed from {before!r} to {after!r}; spectral bounds violated", step)
        if mask is not None:
            spinor = spinor * mask
        if step % sched.record_stride == 0 or step == sched.n_steps:
            emit(step, t0 + step * sched.dt)
    return records
