"""Desk-scale numerical lab for shocks on the half-line driven by
time-periodic boundary data: inviscid and viscous IBVP solvers, boundary
waves, the viscous shock profile, and the shift machinery tying them
together."""

from . import errors
from .flux import (FluxModel, ShockData, averaged_speed, burgers, check_lax,
                   flux_by_name, inverse_on_incoming_branch, oleinik_f0,
                   quartic, shock_speed)
from .harness import ExperimentConfig, convergence_study, run_scenario, run_suite
from .signal import PeriodicSignal

__all__ = [
    "errors", "FluxModel", "ShockData", "averaged_speed", "burgers",
    "check_lax", "flux_by_name", "inverse_on_incoming_branch", "oleinik_f0",
    "quartic", "shock_speed", "PeriodicSignal",
    "ExperimentConfig", "convergence_study", "run_scenario", "run_suite",
]
