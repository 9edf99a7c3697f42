"""Line-oriented ``key = value`` configuration.

Keys are dot-namespaced (``pulse.chi_freq = 20``); ``#`` starts a comment.
Numeric values may be simple arithmetic over numbers, ``pi`` and ``sqrt``,
e.g. ``schedule.dt = 4*pi/10``.  Missing keys take the typical propagation
parameters: 256 points spaced 0.05, 200 steps of 4*pi/10, pulse width
sqrt(pi/2), unit peak Rabi frequency, initial packet of width 0.1 at r = 0.
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field, fields, replace
from typing import Optional

from ..field import PulseParams, energy_scaled_amplitude
from ..grid import SpatialGrid, build_grid
from ..models import SystemModel, TwoComponentState, initial_gaussian, initial_tls, make_tls, make_tps
from ..propagator import PropagationSchedule

__all__ = [
    "ConfigError",
    "SimulationConfig",
    "parse_config",
    "format_config",
    "apply_overrides",
    "build_simulation",
]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PulseSection:
    E0: float = 1.0
    omega0: float = 0.0
    Gamma: float = math.sqrt(2.0 / math.pi)
    chi_freq: float = 0.0
    phi_E: float = 0.0
    t_center: Optional[float] = None


@dataclass(frozen=True)
class GridSection:
    n_points: int = 256
    dr: float = 0.05
    r_min: Optional[float] = None


@dataclass(frozen=True)
class ModelSection:
    omega_eg: float = 0.0
    slope: float = -2.0
    mass: float = 1836.0
    mu: float = 1.0


@dataclass(frozen=True)
class StateSection:
    center: float = 0.0
    width: float = 0.1


@dataclass(frozen=True)
class ScheduleSection:
    dt: float = 4.0 * math.pi / 10.0
    n_steps: int = 200
    record_stride: int = 1


@dataclass(frozen=True)
class OptionsSection:
    energy_conserving_amplitude: bool = False
    absorbing_mask_fraction: float = 0.0
    intensity_factor: float = 1.0
    intensity_mode: str = "intensity"


@dataclass(frozen=True)
class OutputSection:
    path: str = "trajectory.csv"


@dataclass(frozen=True)
class SweepSection:
    chi_freq: tuple = ()


@dataclass(frozen=True)
class SimulationConfig:
    system: str = "tls"
    pulse: PulseSection = field(default_factory=PulseSection)
    grid: GridSection = field(default_factory=GridSection)
    model: ModelSection = field(default_factory=ModelSection)
    state: StateSection = field(default_factory=StateSection)
    schedule: ScheduleSection = field(default_factory=ScheduleSection)
    options: OptionsSection = field(default_factory=OptionsSection)
    output: OutputSection = field(default_factory=OutputSection)
    sweep: SweepSection = field(default_factory=SweepSection)

    def get(self, key: str):
        section, _, name = key.partition(".")
        return getattr(getattr(self, section), name) if name else getattr(self, section)

    def with_value(self, key: str, value) -> "SimulationConfig":
        section, _, name = key.partition(".")
        if not name:
            return replace(self, **{section: value})
        return replace(self, **{section: replace(getattr(self, section), **{name: value})})


_SECTIONS = [f.name for f in fields(SimulationConfig) if f.name != "system"]


def _field_types() -> dict:
    out = {"system": "str"}
    for name in _SECTIONS:
        section_cls = SimulationConfig.__dataclass_fields__[name].default_factory
        for f in fields(section_cls):
            out[f"{name}.{f.name}"] = f.type
    return out


KEY_TYPES = _field_types()

# ---- value parsing ---------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi}
_FUNCS = {"sqrt": math.sqrt}


def _eval_number(text: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS and len(node.args) == 1:
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(text)

    return ev(ast.parse(text.strip(), mode="eval"))


def _convert(key: str, raw: str):
    kind = KEY_TYPES[key]
    raw = raw.strip()
    try:
        if kind == "str":
            if not raw:
                raise ValueError(raw)
            return raw
        if kind == "bool":
            low = raw.lower()
            if low in ("true", "yes", "on", "1"):
                return True
            if low in ("false", "no", "off", "0"):
                return False
            raise ValueError(raw)
        if kind == "int":
            value = _eval_number(raw)
            if float(value) != int(value):
                raise ValueError(raw)
            return int(value)
        if kind == "float":
            return float(_eval_number(raw))
        if kind == "Optional[float]":
            return None if raw.lower() == "auto" else float(_eval_number(raw))
        if kind == "tuple":
            if not raw:
                return ()
            return tuple(float(_eval_number(part)) for part in raw.split(","))
    except (ValueError, SyntaxError, TypeError, ZeroDivisionError, OverflowError):
        raise ConfigError(f"{key}: cannot read {raw!r} as {kind}") from None
    raise AssertionError(kind)


def _format_value(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    return str(value)


# ---- validation ------------------------------------------------------------


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


def validate(cfg: SimulationConfig) -> SimulationConfig:
    def fail(key, msg):
        raise ConfigError(f"{key}: {msg} (got {cfg.get(key)!r})")

    def finite(key):
        v = cfg.get(key)
        if v is not None and not math.isfinite(v):
            fail(key, "must be finite")

    for key, kind in KEY_TYPES.items():
        if kind in ("float", "Optional[float]"):
            finite(key)
    if cfg.system not in ("tls", "tps"):
        fail("system", "must be 'tls' or 'tps'")
    if not cfg.pulse.Gamma > 0:
        fail("pulse.Gamma", "spectral bandwidth must be positive")
    if not cfg.pulse.E0 >= 0:
        fail("pulse.E0", "peak amplitude must be non-negative")
    if not _is_power_of_two(cfg.grid.n_points):
        fail("grid.n_points", "must be a power of two >= 2")
    if not cfg.grid.dr > 0:
        fail("grid.dr", "grid spacing must be positive")
    if not cfg.model.mass > 0:
        fail("model.mass", "mass must be positive")
    if not cfg.model.mu >= 0:
        fail("model.mu", "transition dipole must be non-negative")
    if not cfg.state.width > 0:
        fail("state.width", "wavepacket width must be positive")
    if not cfg.schedule.dt > 0:
        fail("schedule.dt", "time step must be positive")
    if not cfg.schedule.n_steps >= 1:
        fail("schedule.n_steps", "must be >= 1")
    if not cfg.schedule.record_stride >= 1:
        fail("schedule.record_stride", "must be >= 1")
    if not 0 <= cfg.options.absorbing_mask_fraction < 0.5:
        fail("options.absorbing_mask_fraction", "must lie in [0, 0.5)")
    if not cfg.options.intensity_factor > 0:
        fail("options.intensity_factor", "must be positive")
    if cfg.options.intensity_mode not in ("intensity", "amplitude"):
        fail("options.intensity_mode", "must be 'intensity' or 'amplitude'")
    if cfg.system == "tps":
        g = grid_of(cfg)
        if not g.r_min <= cfg.state.center <= g.r_max:
            fail("state.center", f"must lie inside the grid [{g.r_min}, {g.r_max}]")
    for v in cfg.sweep.chi_freq:
        if not math.isfinite(v):
            fail("sweep.chi_freq", "values must be finite")
    return cfg


# ---- public API --------------------------------------------------------------


def parse_config(text: str, base: SimulationConfig | None = None) -> SimulationConfig:
    """Parse ``key = value`` lines on top of ``base`` (defaults when omitted)."""
    cfg = SimulationConfig() if base is None else base
    seen = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        key, _, raw = content.partition("=")
        key = key.strip()
        if key not in KEY_TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(f"line {lineno}: key {key!r} already set on line {seen[key]}")
        seen[key] = lineno
        cfg = cfg.with_value(key, _convert(key, raw))
    return validate(cfg)


def format_config(cfg: SimulationConfig) -> str:
    """Render every key; ``parse_config(format_config(cfg)) == cfg``."""
    return "".join(f"{key} = {_format_value(cfg.get(key))}\n" for key in KEY_TYPES)


def apply_overrides(cfg: SimulationConfig, overrides) -> SimulationConfig:
    """Apply ``key=value`` strings, as given on the command line."""
    lines = []
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        lines.append(item)
    return parse_config("\n".join(lines), base=cfg)


# ---- construction --------------------------------------------------------------


def grid_of(cfg: SimulationConfig) -> SpatialGrid:
    return build_grid(cfg.grid.n_points, cfg.grid.dr, cfg.grid.r_min)


def amplitude_of(cfg: SimulationConfig, chi_freq: float) -> float:
    opts = cfg.options
    factor = math.sqrt(opts.intensity_factor) if opts.intensity_mode == "intensity" else opts.intensity_factor
    e0 = cfg.pulse.E0 * factor
    if opts.energy_conserving_amplitude:
        e0 = energy_scaled_amplitude(e0, cfg.pulse.Gamma, chi_freq)
    return e0


@dataclass(frozen=True)
class Simulation:
    model: SystemModel
    pulse: PulseParams
    schedule: PropagationSchedule
    state0: TwoComponentState
    mask_fraction: float


def build_simulation(cfg: SimulationConfig) -> Simulation:
    sched = PropagationSchedule(cfg.schedule.dt, cfg.schedule.n_steps, cfg.schedule.record_stride)
    t_center = sched.duration / 2.0 if cfg.pulse.t_center is None else cfg.pulse.t_center
    pulse = PulseParams(
        E0=amplitude_of(cfg, cfg.pulse.chi_freq),
        omega0=cfg.pulse.omega0,
        Gamma=cfg.pulse.Gamma,
        chi_freq=cfg.pulse.chi_freq,
        phi_E=cfg.pulse.phi_E,
        t_center=t_center,
    )
    if cfg.system == "tls":
        model = make_tls(cfg.model.omega_eg, cfg.model.mu)
        state0 = initial_tls()
    else:
        g = grid_of(cfg)
        model = make_tps(g, cfg.model.slope, cfg.model.mass, cfg.model.mu)
        state0 = initial_gaussian(g, cfg.state.center, cfg.state.width)
    return Simulation(model, pulse, sched, state0, cfg.options.absorbing_mask_fraction)
