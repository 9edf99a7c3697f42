"""Shared test utilities."""

import numpy as np

from chirped_inversion.propagator import propagate
from chirped_inversion.runner.config import build_simulation


def random_spinor(rng, n, weight=1.0):
    v = rng.normal(size=(2, n)) + 1j * rng.normal(size=(2, n))
    return v / np.sqrt(weight * np.vdot(v, v).real)


def run(cfg, observer=None):
    """Propagate a configuration; return (simulation, records)."""
    sim = build_simulation(cfg)
    records = propagate(sim.state0, sim.model, sim.pulse, sim.schedule, observer=observer)
    return sim, records


def refined(cfg, n_steps):
    """Same time window as ``cfg`` split into ``n_steps`` steps."""
    window = cfg.schedule.dt * cfg.schedule.n_steps
    return cfg.with_value("schedule.n_steps", n_steps).with_value("schedule.dt", window / n_steps)


class FinalState:
    def __call__(self, step, state, field_value):
        self.state = state
