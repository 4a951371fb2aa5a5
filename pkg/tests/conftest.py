# -*- coding: utf-8 -*-
from __future__ import annotations

import numpy as np
import pytest

from zobopt.algorithms import Algorithm, SolverConfig
from zobopt.estimators import RadiusSchedule
from zobopt.problems import make_problem, make_quad_ball


def linear_problem(a, y_upper=(1.0,), constraint=None):
    """h(x) = aᵀx; restrição opcional (callable) ou c ≡ 0."""
    a = np.asarray(a, dtype=float)
    cons = constraint or (lambda x: np.zeros(len(y_upper)))
    return make_problem(
        objective=lambda x: float(a @ x),
        constraints=cons,
        dim_x=a.size,
        y_upper=list(y_upper),
    )


def unconstrained(objective, grad, dim_x=1):
    return make_problem(
        objective=objective,
        constraints=None,
        dim_x=dim_x,
        y_upper=[],
        true_grads=lambda x: (grad(x), np.zeros((0, dim_x))),
    )


def gda_config(K, b=1, alpha=0.1, beta=0.05, algorithm=Algorithm.ZOB_GDA, seed=0, **kwargs):
    b_eff = b if Algorithm(algorithm).is_block else 1
    return SolverConfig(
        algorithm=algorithm,
        alpha=alpha,
        beta=beta,
        radius=RadiusSchedule.auto(block_size=b_eff, horizon=K),
        block_size=b,
        max_iters=K,
        seed=seed,
        **kwargs,
    )


@pytest.fixture
def quad_ball():
    return make_quad_ball(20, seed=0)


@pytest.fixture
def small_quad_ball():
    return make_quad_ball(6, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
