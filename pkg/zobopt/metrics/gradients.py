# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Tuple

import numpy as np

from ..errors import UnsupportedMetricError
from ..problems.oracle import true_gradients

FALLBACK_RADIUS = 1e-6


def lagrangian_gradients(
    problem,
    x: np.ndarray,
    fallback: bool = False,
    r: float = FALLBACK_RADIUS,
) -> Tuple[np.ndarray, np.ndarray, bool]:
    """
    Devolve (∇h(x), J_c(x), aproximado).

    Usa os gradientes analíticos quando o problema os tem. Sem eles, e com
    `fallback`, estima todos os canais por diferenças progressivas no
    orçamento de métricas (uma base + d perturbações) e marca o resultado
    como aproximado.
    """
    if problem.has_true_grads:
        grad_h, jac = true_gradients(problem, x)
        return grad_h, jac, False
    if not fallback:
        raise UnsupportedMetricError(
            f"{problem.name}: métrica exige gradientes verdadeiros (ative o fallback por CGE)."
        )

    x = np.asarray(x, dtype=float)
    h0, c0 = problem.evaluate_exact(x)
    grad_h = np.zeros(problem.dim_x)
    jac = np.zeros((problem.dim_y, problem.dim_x))
    probe = x.copy()
    for i in range(problem.dim_x):
        probe[i] = x[i] + r
        hi, ci = problem.evaluate_exact(probe)
        grad_h[i] = (hi - h0) / r
        jac[:, i] = (ci - c0) / r
        probe[i] = x[i]
    return grad_h, jac, True
