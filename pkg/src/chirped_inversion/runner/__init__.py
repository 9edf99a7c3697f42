from .config import ConfigError, SimulationConfig, apply_overrides, build_simulation, format_config, parse_config
from .output import write_summary, write_trajectory
from .presets import PRESETS, load_preset, preset_names
from .scenario import run_scenario, run_sweep, simulate_config

__all__ = [
    "ConfigError",
    "SimulationConfig",
    "PRESETS",
    "apply_overrides",
    "build_simulation",
    "format_config",
    "load_preset",
    "parse_config",
    "preset_names",
    "run_scenario",
    "run_sweep",
    "simulate_config",
    "write_summary",
    "write_trajectory",
]
