# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParameterError
from .gradients import lagrangian_gradients


@dataclass(frozen=True)
class KKTReport:
    """
    Resíduos KKT críticos de (x, y):
      - grad_lagrangian_norm: ‖∇h(x) + yᵀ∇c(x)‖
      - max_violation: max(0, max_j c_j(x))
      - max_compl_slack: max_j |y(j) c_j(x)|
    """

    grad_lagrangian_norm: float
    max_violation: float
    max_compl_slack: float
    dual_nonneg_ok: bool
    y_strictly_below_upper: bool
    approximate: bool = False

    def passes(self, eps: float) -> bool:
        return (
            self.dual_nonneg_ok
            and self.grad_lagrangian_norm <= eps
            and self.max_violation <= eps
            and self.max_compl_slack <= eps
        )


def kkt_residuals(problem, x: np.ndarray, y: np.ndarray, fallback: bool = False) -> KKTReport:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    grad_h, jac, approximate = lagrangian_gradients(problem, x, fallback=fallback)
    _, c = problem.evaluate_exact(x)
    grad_l = grad_h + jac.T @ y if problem.dim_y else grad_h

    if c.size == 0:
        violation, slack = 0.0, 0.0
    else:
        violation = max(0.0, float(np.max(c)))
        slack = float(np.max(np.abs(y * c)))
    return KKTReport(
        grad_lagrangian_norm=float(np.linalg.norm(grad_l)),
        max_violation=violation,
        max_compl_slack=slack,
        dual_nonneg_ok=bool(np.all(y >= 0)),
        y_strictly_below_upper=bool(np.all(y < problem.y_upper)),
        approximate=approximate,
    )


def relative_error(h_val: float, h_star: float) -> float:
    """(h − h*)/h*."""
    if h_star == 0:
        raise InvalidParameterError("erro relativo indefinido para h* = 0 (divisão por zero).")
    return (float(h_val) - float(h_star)) / float(h_star)
