"""``simulate`` command line entry point.

Exit status: 0 on success, 1 on configuration errors, 2 on numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ..propagator import PropagationError
from .config import ConfigError, SimulationConfig, apply_overrides, format_config, parse_config
from .presets import load_preset, preset_names
from .scenario import run_scenario, run_sweep

logger = logging.getLogger("chirped_inversion")

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2


def _parse_sweep(spec: str):
    key, sep, values = spec.partition("=")
    if not sep or key.strip() not in ("chi_freq", "pulse.chi_freq"):
        raise ConfigError(f"--sweep expects chi_freq=<v1,v2,...>, got {spec!r}")
    cfg = parse_config(f"sweep.chi_freq = {values}")
    if not cfg.sweep.chi_freq:
        raise ConfigError("--sweep needs at least one value")
    return cfg.sweep.chi_freq


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simulate", description="Chirped-pulse population transfer in two-level and two-surface systems.")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--config", metavar="PATH", help="configuration file of key = value lines")
    src.add_argument("--preset", metavar="NAME", help="embedded scenario configuration")
    p.add_argument("--override", metavar="KEY=VALUE", nargs="+", default=[], help="override configuration keys")
    p.add_argument("--sweep", metavar="chi_freq=V1,V2,...", help="run one propagation per chirp value")
    p.add_argument("--out", metavar="DIR", default=".", help="output directory (default: current directory)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    p.add_argument("--list-presets", action="store_true", help="print preset names and exit")
    p.add_argument("--show-config", action="store_true", help="print the effective configuration and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def load_config(args) -> SimulationConfig:
    if args.preset:
        cfg = load_preset(args.preset)
    elif args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc.strerror}") from None
        cfg = parse_config(text)
    else:
        cfg = SimulationConfig()
    return apply_overrides(cfg, args.override)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.list_presets:
        print("\n".join(preset_names()))
        return EXIT_OK
    try:
        cfg = load_config(args)
        sweep = _parse_sweep(args.sweep) if args.sweep else cfg.sweep.chi_freq
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.show_config:
        sys.stdout.write(format_config(cfg))
        return EXIT_OK
    try:
        if sweep:
            rows = run_sweep(cfg, sweep, args.out, jobs=args.jobs)
            if any(r["status"] != "ok" for r in rows):
                return EXIT_NUMERICAL
        else:
            run_scenario(cfg, args.out)
    except PropagationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"output error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
