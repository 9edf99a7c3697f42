"""Linearly chirped Gaussian pulses and square pulses.

All quantities are in atomic units (hbar = 1). A pulse is described by its
spectral bandwidth ``Gamma`` and frequency-domain chirp ``chi_freq`` (dt/domega);
the temporal duration ``tau`` and time-domain chirp ``chi`` (domega/dt) are
derived from those two.

Pulse objects expose a small protocol used by the propagator:

``field(t)``
    complex field amplitude E(t)
``carrier_phase(t)``
    the time-dependent part of arg E(t), i.e. without the constant ``phi_E``
``peak_amplitude``
    upper bound of |E(t)| over all t
``time_unit``
    the 6*tau normalizer used for reduced time and reduced rate
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

__all__ = [
    "PulseParams",
    "SquarePulse",
    "pulse_duration",
    "chirp_time_domain",
    "energy_scaled_amplitude",
    "field_time",
    "field_spectrum",
    "instantaneous_frequency",
    "square_pulse",
]


def _check_bandwidth(Gamma):
    if not Gamma > 0 or not math.isfinite(Gamma):
        raise ValueError(f"spectral bandwidth Gamma must be positive and finite, got {Gamma!r}")


def pulse_duration(Gamma: float, chi_freq: float) -> float:
    """Temporal width tau of a chirped pulse, tau**2 = 1/Gamma**2 + Gamma**2 * chi_freq**2."""
    _check_bandwidth(Gamma)
    return math.sqrt(1.0 / Gamma**2 + Gamma**2 * chi_freq**2)


def chirp_time_domain(Gamma: float, chi_freq: float) -> float:
    """Time-domain chirp rate chi = chi_freq * Gamma**2 / tau**2."""
    _check_bandwidth(Gamma)
    tau2 = 1.0 / Gamma**2 + Gamma**2 * chi_freq**2
    return chi_freq * Gamma**2 / tau2


def energy_scaled_amplitude(E0: float, Gamma: float, chi_freq: float) -> float:
    """Peak amplitude that keeps the pulse energy of an unchirped pulse with peak ``E0``.

    The energy scales as E0**2 * tau, so E0(chi') = E0(0) * sqrt(tau(0) / tau(chi')).
    """
    return E0 * math.sqrt(pulse_duration(Gamma, 0.0) / pulse_duration(Gamma, chi_freq))


@dataclass(frozen=True)
class PulseParams:
    """Chirped Gaussian pulse.

    Parameters
    ----------
    E0
        Peak field amplitude.
    omega0
        Carrier angular frequency.
    Gamma
        Spectral bandwidth.
    chi_freq
        Frequency-domain chirp chi' (units of time**2).
    phi_E
        Constant field phase.
    t_center
        Time of the envelope maximum.
    """

    E0: float = 1.0
    omega0: float = 0.0
    Gamma: float = math.sqrt(2.0 / math.pi)
    chi_freq: float = 0.0
    phi_E: float = 0.0
    t_center: float = 0.0
    tau: float = dc_field(init=False, repr=False, compare=False)
    chi: float = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_bandwidth(self.Gamma)
        if not self.E0 >= 0:
            raise ValueError(f"peak amplitude E0 must be non-negative, got {self.E0!r}")
        object.__setattr__(self, "tau", pulse_duration(self.Gamma, self.chi_freq))
        object.__setattr__(self, "chi", chirp_time_domain(self.Gamma, self.chi_freq))

    @property
    def tau_unchirped(self) -> float:
        return 1.0 / self.Gamma

    @property
    def stretch(self) -> float:
        """Ratio f of chirped to transform-limited duration."""
        return self.tau / self.tau_unchirped

    @property
    def peak_amplitude(self) -> float:
        return self.E0

    @property
    def time_unit(self) -> float:
        return 6.0 * self.tau_unchirped * self.stretch

    def carrier_phase(self, t):
        s = np.asarray(t, dtype=float) - self.t_center
        return -(self.omega0 * s + 0.5 * self.chi * s * s)

    def field(self, t):
        return field_time(t, self)

    def spectrum(self, omega):
        return field_spectrum(omega, self)


def field_time(t, p: PulseParams):
    """E(t) = E0 exp[-s**2/(2 tau**2)] exp[-i(omega0 s + chi s**2 / 2) + i phi_E], s = t - t_center."""
    s = np.asarray(t, dtype=float) - p.t_center
    envelope = p.E0 * np.exp(-0.5 * (s / p.tau) ** 2)
    out = envelope * np.exp(1j * (p.carrier_phase(t) + p.phi_E))
    return out[()] if out.ndim == 0 else out


def field_spectrum(omega, p: PulseParams):
    """Spectral amplitude of the pulse, referenced to its own centre time.

    Convention: E(t_center + s) = (1/2pi) * integral E~(omega) exp(-i omega s) domega,
    which gives

        E~(omega) = E~(omega0) exp[-(omega - omega0)**2 / (2 Gamma**2) + i chi' (omega - omega0)**2 / 2]

    with E~(omega0) = E0 * sqrt(2 pi) * tau / sqrt(1 + i chi' Gamma**2) * exp(i phi_E).
    The on-carrier value is fixed by the time-domain peak E0; its modulus is
    E0 * sqrt(2 pi tau / Gamma), so chirping at fixed E0 raises the spectral
    amplitude while the energy-scaled amplitude keeps it at E0 * sqrt(2 pi) / Gamma.
    This sign of the quadratic phase makes chi' = dt/domega (group delay grows
    with frequency for chi' > 0) and is the one consistent with ``field_time``.
    """
    w = np.asarray(omega, dtype=float) - p.omega0
    centre = p.E0 * math.sqrt(2.0 * math.pi) * p.tau / np.sqrt(1.0 + 1j * p.chi_freq * p.Gamma**2)
    out = centre * np.exp(1j * p.phi_E) * np.exp(-0.5 * (w / p.Gamma) ** 2 + 0.5j * p.chi_freq * w * w)
    return out[()] if out.ndim == 0 else out


def instantaneous_frequency(t, p: PulseParams):
    """omega0 + chi * (t - t_center)."""
    out = p.omega0 + p.chi * (np.asarray(t, dtype=float) - p.t_center)
    return out[()] if np.ndim(out) == 0 else out


def square_pulse(t, E0: float, omega: float, window):
    """E0 * exp(-i omega t) for t_on <= t < t_off, zero elsewhere."""
    t_on, t_off = window
    if not t_on < t_off:
        raise ValueError(f"square pulse window must satisfy t_on < t_off, got {window!r}")
    t = np.asarray(t, dtype=float)
    inside = (t >= t_on) & (t < t_off)
    out = np.where(inside, E0 * np.exp(-1j * omega * t), 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class SquarePulse:
    E0: float
    omega: float = 0.0
    t_on: float = 0.0
    t_off: float = 1.0

    def __post_init__(self):
        if not self.t_on < self.t_off:
            raise ValueError(f"square pulse window must satisfy t_on < t_off, got {(self.t_on, self.t_off)!r}")

    @property
    def peak_amplitude(self) -> float:
        return abs(self.E0)

    @property
    def time_unit(self) -> float:
        return self.t_off - self.t_on

    def carrier_phase(self, t):
        return -self.omega * np.asarray(t, dtype=float)

    def field(self, t):
        return square_pulse(t, self.E0, self.omega, (self.t_on, self.t_off))
