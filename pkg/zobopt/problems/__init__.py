# -*- coding: utf-8 -*-
from .noise import NoiseSpec, wrap_noise
from .oracle import (
    MetricsView,
    OracleProblem,
    QueryCounter,
    ReferencePoint,
    evaluate,
    make_problem,
    true_gradients,
)
from .suite import PROBLEM_BUILDERS, build_problem, make_quad_ball, make_toy_grid

__all__ = [
    "NoiseSpec",
    "wrap_noise",
    "MetricsView",
    "OracleProblem",
    "QueryCounter",
    "ReferencePoint",
    "evaluate",
    "make_problem",
    "true_gradients",
    "PROBLEM_BUILDERS",
    "build_problem",
    "make_quad_ball",
    "make_toy_grid",
]
