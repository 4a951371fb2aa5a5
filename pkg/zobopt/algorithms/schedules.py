# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..errors import InvalidParameterError
from ..estimators import RadiusSchedule, cge_full
from .state import Algorithm, SolverConfig

logger = logging.getLogger(__name__)

TWO_TIME_SCALE_RATIO = 100.0    # β = min(1/L, 100 α) no ZOB-GDA
BOUND_RTOL = 1e-12


@dataclass(frozen=True)
class ProblemBounds:
    L: float


@dataclass(frozen=True)
class LipschitzProbe:
    L_hat: float
    queries: int


def schedule_defaults(
    bounds: ProblemBounds,
    K: int,
    b: int,
    algorithm: Algorithm,
    dim_x: int,
    seed: int = 0,
    radius: Optional[RadiusSchedule] = None,
    project_x: bool = False,
) -> SolverConfig:
    """
    Parâmetros guiados pelas hipóteses dos teoremas de convergência.

    ZOB-GDA / RGE-GDA:  α = min(1/L, (N/K)^(2/3)),  β = min(1/L, 100 α)
    ZOB-SGDA:           p = 3L,  α = 1/(p + 10L + 1),
                        β = min{1/(12L), α²(p−L)² / (4L(√N + α(p−L))²)},
                        γ = min{1/√(KN), 1/36, 1/(768 p β)}
    N = dim_x / b (real); no RGE-GDA, N = dim_x.
    """
    L = float(bounds.L)
    if not (L > 0 and np.isfinite(L)):
        raise InvalidParameterError(f"L deve ser > 0 (recebido {bounds.L}).")
    if int(K) < 1:
        raise InvalidParameterError("K deve ser >= 1.")
    algorithm = Algorithm(algorithm)
    b = int(b) if algorithm.is_block else 1
    if not 1 <= b <= dim_x:
        raise InvalidParameterError(f"b fora de [1, {dim_x}].")
    N = dim_x / b
    if radius is None:
        radius = RadiusSchedule.auto(block_size=b, horizon=int(K))

    common = dict(radius=radius, block_size=b, max_iters=int(K), seed=seed, project_x=project_x)
    if algorithm is Algorithm.ZOB_SGDA:
        p = 3.0 * L
        alpha = 1.0 / (p + 10.0 * L + 1.0)
        beta = min(
            1.0 / (12.0 * L),
            alpha**2 * (p - L) ** 2 / (4.0 * L * (np.sqrt(N) + alpha * (p - L)) ** 2),
        )
        gamma = min(1.0 / np.sqrt(K * N), 1.0 / 36.0, 1.0 / (768.0 * p * beta))
        return SolverConfig(algorithm=algorithm, alpha=alpha, beta=beta, gamma=gamma, p=p, **common)

    alpha = min(1.0 / L, (N / K) ** (2.0 / 3.0))
    beta = min(1.0 / L, TWO_TIME_SCALE_RATIO * alpha)
    return SolverConfig(algorithm=algorithm, alpha=alpha, beta=beta, **common)


def check_theorem_conditions(cfg: SolverConfig, L: float, dim_x: int) -> List[str]:
    """
    Reavalia as desigualdades das hipóteses; devolve as violadas
    (lista vazia quando a configuração é válida).
    """

    def le(value: float, bound: float) -> bool:
        return value <= bound * (1.0 + BOUND_RTOL)

    b = cfg.block_size if cfg.algorithm.is_block else 1
    N = dim_x / b
    K = cfg.max_iters
    failed: List[str] = []
    if not le(cfg.radius.sum_squares(K), 1.0 / b):
        failed.append("sum r_k^2 <= 1/b")

    if cfg.algorithm is Algorithm.ZOB_SGDA:
        p, a, be, g = cfg.p, cfg.alpha, cfg.beta, cfg.gamma
        checks = {
            "p >= 3L": p >= 3.0 * L * (1.0 - BOUND_RTOL),
            "alpha <= 1/(p+10L+1)": le(a, 1.0 / (p + 10.0 * L + 1.0)),
            "beta <= 1/(12L)": le(be, 1.0 / (12.0 * L)),
            "beta <= a^2(p-L)^2/(4L(sqrt(N)+a(p-L))^2)": le(
                be, a**2 * (p - L) ** 2 / (4.0 * L * (np.sqrt(N) + a * (p - L)) ** 2)
            ),
            "gamma <= 1/sqrt(KN)": le(g, 1.0 / np.sqrt(K * N)),
            "gamma <= 1/36": le(g, 1.0 / 36.0),
            "gamma <= 1/(768 p beta)": le(g, 1.0 / (768.0 * p * be)),
        }
    else:
        checks = {
            "0 < alpha <= 1/L": 0 < cfg.alpha and le(cfg.alpha, 1.0 / L),
            "0 < beta <= 1/L": 0 < cfg.beta and le(cfg.beta, 1.0 / L),
        }
    failed += [name for name, ok in checks.items() if not ok]
    return failed


def probe_lipschitz(
    problem,
    n_points: int = 20,
    delta: float = 1e-3,
    seed: int = 0,
    r: float = 1e-6,
) -> LipschitzProbe:
    """
    Estima L por max ‖g(x + δu) − g(x)‖ / δ com CGE completo, em pontos
    sorteados e com y = 0 e y = ȳ. Consultas saem do orçamento de métricas.
    """
    view = problem.metrics_view()
    rng = np.random.default_rng(seed)
    start = problem.metrics_counter.total
    L_hat = 0.0
    for y in (np.zeros(problem.dim_y), problem.y_upper):
        for _ in range(int(n_points)):
            if problem.x_box is not None:
                x = rng.uniform(*problem.x_box)
            else:
                x = rng.standard_normal(problem.dim_x)
            u = rng.standard_normal(problem.dim_x)
            u /= np.linalg.norm(u)
            g0 = cge_full(view, x, y, r).grad
            g1 = cge_full(view, x + delta * u, y, r).grad
            L_hat = max(L_hat, float(np.linalg.norm(g1 - g0)) / delta)
    queries = problem.metrics_counter.total - start
    logger.info("L estimado %.4g (%d consultas de métricas)", L_hat, queries)
    return LipschitzProbe(L_hat=L_hat, queries=queries)
