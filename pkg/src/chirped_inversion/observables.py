"""Populations, population flow, transition dipole and the formal-solution oracles.

Sign conventions (hbar = 1, spinor order (psi_e, psi_g)):

* transition dipole d = mu <psi_e|psi_g>
* ground-population rate dN_g/dt = 2 Im(E d) = 2 |d| |E| sin(phi_mu + phi_E)

For a chirped pulse the field phase has a time-dependent part (carrier and
chirp) on top of the constant ``phi_E``.  Trajectory records therefore store the
dipole in the frame co-rotating with that time-dependent phase,
d~ = d exp(i carrier_phase(t)), so that phi_mu = arg d~ is the relative phase
that, together with the constant phi_E, fixes the direction of transfer.  For a
resonant, unchirped pulse in the rotating frame the two coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import EXCITED, GROUND, SystemModel, TwoComponentState
from .propagator import PropagationSchedule, chebychev_apply, estimate_bounds, make_plan, surface_propagator

__all__ = [
    "TrajectoryRecord",
    "HistoryRecorder",
    "ground_population",
    "excited_population",
    "total_norm",
    "transition_dipole",
    "dipole_phase",
    "population_rate",
    "population_rate_polar",
    "finite_difference_rate",
    "normalized_units",
    "reconstruct_excited",
    "reconstruct_excited_series",
    "rate_memory_integral",
    "rate_memory_series",
    "analytic_resonant_tls",
    "make_record",
    "is_monotone",
    "transfer_phase_sines",
    "summarize",
]

PHASE_FLOOR = 1e-12
MONOTONE_TOL = 1e-4
DIPOLE_FLOOR = 1e-6


@dataclass(frozen=True)
class TrajectoryRecord:
    step: int
    t: float
    t_r: float
    n_g: float
    rate: float
    rate_r: float
    dipole: complex
    phi_mu: float
    field: complex
    total_norm: float
    phi_E: float = 0.0
    dipole_lab: complex = 0j


def ground_population(state: TwoComponentState, m: SystemModel | None = None) -> float:
    """N_g = integral |psi_g|**2 dr."""
    w = 1.0 if m is None else m.weight
    return w * float(np.vdot(state.psi_g, state.psi_g).real)


def excited_population(state: TwoComponentState, m: SystemModel | None = None) -> float:
    w = 1.0 if m is None else m.weight
    return w * float(np.vdot(state.psi_e, state.psi_e).real)


def total_norm(state: TwoComponentState, m: SystemModel | None = None) -> float:
    return ground_population(state, m) + excited_population(state, m)


def transition_dipole(state: TwoComponentState, m: SystemModel) -> complex:
    """<psi_e| mu |psi_g> for a coordinate-independent dipole."""
    return m.mu * m.weight * complex(np.vdot(state.psi_e, state.psi_g))


def dipole_phase(dipole: complex, mu: float = 1.0) -> float:
    """arg(dipole) in (-pi, pi]; NaN when the coherence is too small for a phase to mean anything."""
    if abs(dipole) < PHASE_FLOOR * max(abs(mu), 1e-300):
        return math.nan
    return math.atan2(dipole.imag, dipole.real)


def population_rate(state: TwoComponentState, m: SystemModel, field_value: complex) -> float:
    """dN_g/dt = 2 Im(E d)."""
    return 2.0 * (field_value * transition_dipole(state, m)).imag


def population_rate_polar(state: TwoComponentState, m: SystemModel, field_value: complex) -> float:
    """dN_g/dt = 2 |d| |E| sin(phi_mu + phi_E), phases taken from d and E directly."""
    d = transition_dipole(state, m)
    if d == 0 or field_value == 0:
        return 0.0
    return 2.0 * abs(d) * abs(field_value) * math.sin(np.angle(d) + np.angle(field_value))


def finite_difference_rate(state: TwoComponentState, m: SystemModel, field_value: complex, h: float = 1e-4) -> float:
    """Centred difference [N_g(t+h) - N_g(t-h)] / 2h with the Hamiltonian frozen at ``field_value``.

    Independent of the rate formula: N_g is advanced by the propagator itself.
    """
    lo, hi = estimate_bounds(m, abs(m.mu * field_value))
    spinor = state.spinor()
    apply_h = lambda v: m.apply(v, field_value)
    fwd = chebychev_apply(apply_h, spinor, make_plan(lo, hi, h))
    bwd = chebychev_apply(apply_h, spinor, make_plan(lo, hi, -h))
    w = m.weight
    n_fwd = w * float(np.vdot(fwd[GROUND], fwd[GROUND]).real)
    n_bwd = w * float(np.vdot(bwd[GROUND], bwd[GROUND]).real)
    return (n_fwd - n_bwd) / (2.0 * h)


def normalized_units(t, tau_unchirped: float, f: float = 1.0):
    """Reduced time t / (6 tau0 f) and the scale 6 tau0 f that multiplies rates."""
    if not tau_unchirped > 0:
        raise ValueError("tau_unchirped must be positive")
    if not f >= 1.0:
        raise ValueError("duration ratio f must be >= 1")
    scale = 6.0 * tau_unchirped * f
    return np.asarray(t) / scale, scale


def make_record(step: int, state: TwoComponentState, m: SystemModel, field_value: complex, pulse, time_unit: float) -> TrajectoryRecord:
    d_lab = transition_dipole(state, m)
    d = d_lab * complex(np.exp(1j * pulse.carrier_phase(state.t)))
    rate = population_rate(state, m, field_value)
    return TrajectoryRecord(
        step=step,
        t=state.t,
        t_r=state.t / time_unit,
        n_g=ground_population(state, m),
        rate=rate,
        rate_r=rate * time_unit,
        dipole=d,
        phi_mu=dipole_phase(d, m.mu),
        field=field_value,
        total_norm=total_norm(state, m),
        phi_E=float(getattr(pulse, "phi_E", 0.0)),
        dipole_lab=d_lab,
    )


class HistoryRecorder:
    """Observer collecting psi_g and E at every recorded step (use record_stride = 1)."""

    def __init__(self):
        self.psi_g = []
        self.psi_e = []
        self.fields = []
        self.times = []

    def __call__(self, step, state, field_value):
        self.psi_g.append(state.psi_g.copy())
        self.psi_e.append(state.psi_e.copy())
        self.fields.append(field_value)
        self.times.append(state.t)

    @property
    def psi_g_history(self):
        return np.array(self.psi_g)

    @property
    def psi_e_history(self):
        return np.array(self.psi_e)

    @property
    def field_history(self):
        return np.array(self.fields)


def _check_history(psi_g_history, field_history, m: SystemModel):
    psi_g_history = np.asarray(psi_g_history, dtype=complex)
    field_history = np.asarray(field_history, dtype=complex)
    if psi_g_history.ndim == 1:
        psi_g_history = psi_g_history[:, None]
    if psi_g_history.shape[0] != field_history.shape[0]:
        raise ValueError(
            f"history length mismatch: {psi_g_history.shape[0]} wavefunctions vs {field_history.shape[0]} field samples"
        )
    if psi_g_history.shape[1] != m.size:
        raise ValueError(f"history wavefunctions have {psi_g_history.shape[1]} points, model expects {m.size}")
    return psi_g_history, field_history


def reconstruct_excited_series(psi_g_history, field_history, m: SystemModel, sched: PropagationSchedule) -> np.ndarray:
    """psi_e(t_k) = i * integral_0^t_k exp(-i H_e (t_k - s)) mu E(s) psi_g(s) ds for every history point.

    Trapezoid rule on the step grid; the running sum is carried forward with
    the excited-surface propagator, so the cost is one surface step per point.
    """
    psi_g_history, field_history = _check_history(psi_g_history, field_history, m)
    n = psi_g_history.shape[0]
    u = surface_propagator(m, sched.dt, EXCITED)
    source = m.mu * field_history[:, None] * psi_g_history
    out = np.zeros_like(psi_g_history)
    acc = source[0].copy()
    first = source[0].copy()
    for k in range(1, n):
        acc = u(acc) + source[k]
        first = u(first)
        out[k] = 1j * sched.dt * (acc - 0.5 * first - 0.5 * source[k])
    return out


def reconstruct_excited(psi_g_history, field_history, m: SystemModel, sched: PropagationSchedule) -> np.ndarray:
    """Excited component at the last history time from the formal solution."""
    return reconstruct_excited_series(psi_g_history, field_history, m, sched)[-1]


def rate_memory_series(psi_g_history, field_history, m: SystemModel, sched: PropagationSchedule) -> np.ndarray:
    """-2 Im[i integral <psi_g(t)| mu U_e(t - s) mu |psi_g(s)> E*(t) E(s) ds] at every history time."""
    psi_g_history, field_history = _check_history(psi_g_history, field_history, m)
    psi_e = reconstruct_excited_series(psi_g_history, field_history, m, sched)
    # i * integral(...) is exactly the reconstructed excited amplitude
    overlaps = m.weight * np.einsum("kj,kj->k", psi_g_history.conj(), psi_e)
    return -2.0 * (np.conj(field_history) * m.mu * overlaps).imag


def rate_memory_integral(psi_g_history, field_history, m: SystemModel, sched: PropagationSchedule, t: float) -> float:
    """Memory-integral rate at time ``t`` (measured from the first history point)."""
    psi_g_history, field_history = _check_history(psi_g_history, field_history, m)
    k = int(round(t / sched.dt))
    if abs(k * sched.dt - t) > 1e-9 * max(1.0, abs(t)) or not 0 <= k < psi_g_history.shape[0]:
        raise ValueError(f"time {t!r} is not a history point of the step grid")
    return float(rate_memory_series(psi_g_history[: k + 1], field_history[: k + 1], m, sched)[-1])


def analytic_resonant_tls(t, Omega: float):
    """Resonant square-pulse two-level solution: (cos**2(Omega t), -sin(2 Omega t)).

    The second entry is the shape of dN_g/dt; the exact rate is Omega times it.
    """
    if not Omega >= 0:
        raise ValueError("Rabi frequency must be non-negative")
    t = np.asarray(t, dtype=float)
    return np.cos(Omega * t) ** 2, -np.sin(2.0 * Omega * t)


def is_monotone(records, tol: float = MONOTONE_TOL) -> bool:
    """True when dN_g/dt <= tol * max|dN_g/dt| at every record."""
    rates = np.array([r.rate for r in records])
    peak = np.abs(rates).max() if len(rates) else 0.0
    return bool(np.all(rates <= tol * peak))


def transfer_phase_sines(records, floor: float = DIPOLE_FLOOR) -> np.ndarray:
    """sin(phi_mu + phi_E) at records where |dipole| exceeds ``floor``."""
    vals = [math.sin(r.phi_mu + r.phi_E) for r in records if abs(r.dipole) > floor and not math.isnan(r.phi_mu)]
    return np.array(vals)


def summarize(records) -> dict:
    sines = transfer_phase_sines(records)
    norms = np.array([r.total_norm for r in records])
    return {
        "final_n_g": records[-1].n_g,
        "max_abs_rate": float(np.abs([r.rate for r in records]).max()),
        "monotone": is_monotone(records),
        "norm_drift": float(np.abs(norms - norms[0]).max()),
        "min_sin_phase": float(sines.min()) if sines.size else math.nan,
        "max_sin_phase": float(sines.max()) if sines.size else math.nan,
        "median_sin_phase": float(np.median(sines)) if sines.size else math.nan,
    }
