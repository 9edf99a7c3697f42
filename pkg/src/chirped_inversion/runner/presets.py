"""Embedded scenario configurations for the figure reproductions."""

from __future__ import annotations

from .config import ConfigError, SimulationConfig, parse_config

__all__ = ["PRESETS", "preset_names", "load_preset"]

FIG1_CHIRPS = (2.0, 5.0, 10.0, 20.0)

# Transform-limited resonant pulse of area 2*pi on the literal propagation table:
# 200 steps of 4*pi/10, pulse width sqrt(pi/2), peak Rabi frequency 1.
_FIG1_REFERENCE = """\
# resonant transform-limited 2*pi pulse, two-level system
system = tls
pulse.E0 = 1
pulse.Gamma = sqrt(2/pi)
pulse.chi_freq = 0
schedule.dt = 4*pi/10
schedule.n_steps = 200
output.path = fig1-reference.csv
"""

# Chirped pulses on a window of 12 chirped durations (reduced time 0..2),
# step tau/100.
_FIG1_CHIRP = """\
# chirped pulse, two-level system, chi' = {chi}
system = tls
pulse.E0 = 1
pulse.Gamma = sqrt(2/pi)
pulse.chi_freq = {chi}
schedule.dt = sqrt(pi/2 + 2/pi*({chi})**2)/100
schedule.n_steps = 1200
output.path = fig1-chirp-{name}.csv
"""

_FIG2 = """\
# dipole trajectories for transform-limited and +/- chirped pulses
system = tls
pulse.E0 = 1
pulse.Gamma = sqrt(2/pi)
pulse.chi_freq = 0
schedule.dt = sqrt(pi/2 + 2/pi*20**2)/100
schedule.n_steps = 1200
sweep.chi_freq = 0, 5, -5, 20, -20
output.path = fig2-trajectories.csv
"""

# Flat ground surface, V_e = -2 r, chi' = +/-20, intensity raised five-fold
# (amplitude sqrt(5)).  The excited packet gains momentum 2 per unit time, so the
# grid spacing is halved to keep pi/dr above the momenta reached in the window.
_FIG3 = """\
# two-surface system, chi' = {chi}
system = tps
pulse.E0 = 1
pulse.Gamma = sqrt(2/pi)
pulse.chi_freq = {chi}
grid.n_points = 256
grid.dr = 0.025
model.slope = -2
model.mass = 1836
state.center = 0
state.width = 0.1
schedule.dt = sqrt(pi/2 + 2/pi*20**2)/100
schedule.n_steps = 1200
options.intensity_factor = 5
options.intensity_mode = intensity
output.path = fig3-{name}.csv
"""


def _chirp_name(chi: float) -> str:
    return f"{chi:g}".replace("-", "m")


def _build() -> dict:
    presets = {"fig1-reference": _FIG1_REFERENCE, "fig2-trajectories": _FIG2}
    for chi in FIG1_CHIRPS:
        for value in (chi, -chi):
            presets[f"fig1-chirp-{value:g}"] = _FIG1_CHIRP.format(chi=f"{value:g}", name=_chirp_name(value))
    presets["fig3-positive"] = _FIG3.format(chi="20", name="positive")
    presets["fig3-negative"] = _FIG3.format(chi="-20", name="negative")
    return presets


PRESETS = _build()


def preset_names():
    return sorted(PRESETS)


def load_preset(name: str) -> SimulationConfig:
    try:
        text = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}") from None
    return parse_config(text)
