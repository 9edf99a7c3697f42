"""Chirped-pulse population inversion in two-level and two-surface systems."""

from .field import PulseParams, SquarePulse, chirp_time_domain, field_spectrum, field_time, pulse_duration
from .grid import SpatialGrid, apply_kinetic, build_grid, inner_product
from .models import SystemModel, TwoComponentState, apply_hamiltonian, initial_gaussian, initial_tls, make_tls, make_tps
from .observables import TrajectoryRecord, ground_population, population_rate, transition_dipole
from .propagator import PropagationError, PropagationSchedule, chebychev_step, dense_exponential_step, propagate

__all__ = [
    "PulseParams",
    "SquarePulse",
    "chirp_time_domain",
    "field_spectrum",
    "field_time",
    "pulse_duration",
    "SpatialGrid",
    "apply_kinetic",
    "build_grid",
    "inner_product",
    "SystemModel",
    "TwoComponentState",
    "apply_hamiltonian",
    "initial_gaussian",
    "initial_tls",
    "make_tls",
    "make_tps",
    "TrajectoryRecord",
    "ground_population",
    "population_rate",
    "transition_dipole",
    "PropagationError",
    "PropagationSchedule",
    "chebychev_step",
    "dense_exponential_step",
    "propagate",
]

__version__ = "0.1.0"
