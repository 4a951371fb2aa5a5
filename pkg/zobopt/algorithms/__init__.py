# -*- coding: utf-8 -*-
from .projection import project_box, project_dual
from .schedules import (
    LipschitzProbe,
    ProblemBounds,
    check_theorem_conditions,
    probe_lipschitz,
    schedule_defaults,
)
from .solvers import STEPS, initial_iterate, rge_gda_step, run, zobgda_step, zobsgda_step
from .state import Algorithm, Iterate, SolverConfig

__all__ = [
    "project_box",
    "project_dual",
    "LipschitzProbe",
    "ProblemBounds",
    "check_theorem_conditions",
    "probe_lipschitz",
    "schedule_defaults",
    "STEPS",
    "initial_iterate",
    "rge_gda_step",
    "run",
    "zobgda_step",
    "zobsgda_step",
    "Algorithm",
    "Iterate",
    "SolverConfig",
]
