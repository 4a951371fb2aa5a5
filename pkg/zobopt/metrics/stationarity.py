# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from ..algorithms.projection import project_box, project_dual
from ..errors import InvalidParameterError
from .gradients import lagrangian_gradients


@dataclass(frozen=True)
class StationarityReport:
    """
    Medida de estacionariedade por gradiente proximal 𝔤 = (𝔤_x, 𝔤_y) e,
    quando calculada, a norma do gradiente do envelope de Moreau.
    M = min(‖𝔤‖, ‖∇Φ_{1/2L}‖) ou ‖𝔤‖ sem o envelope.
    """

    g_x_norm: float
    g_y_norm: float
    g_norm: float
    M: float
    moreau_norm: Optional[float] = None
    approximate: bool = False


def prox_grad_stationarity(
    problem,
    x: np.ndarray,
    y: np.ndarray,
    beta: float,
    alpha: Optional[float] = None,
    project_x: bool = False,
    fallback: bool = False,
    observed: Optional[Tuple[float, np.ndarray]] = None,
) -> StationarityReport:
    """
    𝔤_x = ∇h(x) + yᵀ∇c(x), ou (1/α)(x − P_X[x − α ∇_x f]) com a caixa ativa;
    𝔤_y = (1/β)(y − P_Y[y + β c(x)]).

    β deve ser o mesmo passo dual usado pelo solver. `observed` reaproveita
    um (h, c) exato já calculado em x.
    """
    if not beta > 0:
        raise InvalidParameterError("beta deve ser > 0 para a medida de estacionariedade.")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    grad_h, jac, approximate = lagrangian_gradients(problem, x, fallback=fallback)
    g_x = grad_h + jac.T @ y if problem.dim_y else grad_h

    if project_x and problem.x_box is not None:
        if alpha is None or not alpha > 0:
            raise InvalidParameterError("a forma projetada de 𝔤_x exige alpha > 0.")
        g_x = (x - project_box(x - alpha * g_x, *problem.x_box)) / alpha

    _, c = observed if observed is not None else problem.evaluate_exact(x)
    g_y = (y - project_dual(y + beta * c, problem.y_upper)) / beta

    gx_norm = float(np.linalg.norm(g_x))
    gy_norm = float(np.linalg.norm(g_y))
    g_norm = float(np.hypot(gx_norm, gy_norm))
    return StationarityReport(
        g_x_norm=gx_norm,
        g_y_norm=gy_norm,
        g_norm=g_norm,
        M=g_norm,
        approximate=approximate,
    )


def stationarity_report(base: StationarityReport, moreau_norm: Optional[float]) -> StationarityReport:
    if moreau_norm is None:
        return replace(base, moreau_norm=None, M=base.g_norm)
    return replace(base, moreau_norm=float(moreau_norm), M=min(base.g_norm, float(moreau_norm)))


def phi_closed_form(problem, x: np.ndarray) -> float:
    """
    Φ(x) = max_{y∈[0,ȳ]} f(x, y) = h(x) + Σ_j ȳ_j max(c_j(x), 0).
    Uma consulta do orçamento de métricas.
    """
    h, c = problem.evaluate_exact(x)
    if c.size == 0:
        return h
    return h + float(problem.y_upper @ np.maximum(c, 0.0))
