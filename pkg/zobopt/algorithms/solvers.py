# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from ..errors import InvalidParameterError, OracleFailureError, RunFailedError, SolverStepError, ZobError
from ..estimators import GradientEstimate, bcge, rge, sample_block, sample_direction, smoothed_bcge
from ..trace import RunTrace
from ..utils import fingerprint, solver_streams
from .projection import project_box, project_dual
from .state import Algorithm, Iterate, SolverConfig

logger = logging.getLogger(__name__)

StepFn = Callable[[Iterate, object, SolverConfig, np.random.Generator], Iterate]
Callback = Callable[[int, Iterate], None]

RANDOM_INIT_RADIUS = 0.5   # sorteio sem caixa: bola de raio 0.5 em torno da origem


# ===========================
# Pedaços comuns
# ===========================
def _check_step(state: Iterate, cfg: SolverConfig) -> None:
    if state.k >= cfg.max_iters:
        raise InvalidParameterError(f"iteração {state.k} além do orçamento K={cfg.max_iters}.")


def _estimate(state: Iterate, fn, *args) -> GradientEstimate:
    try:
        return fn(*args)
    except OracleFailureError as e:
        raise SolverStepError(f"falha do oráculo na iteração {state.k}: {e}", state.k) from e


def _primal(problem, cfg: SolverConfig, x: np.ndarray, grad: np.ndarray) -> np.ndarray:
    x_next = x - cfg.alpha * grad
    if cfg.project_x and problem.x_box is not None:
        x_next = project_box(x_next, *problem.x_box)
    return x_next


def _dual(problem, cfg: SolverConfig, y: np.ndarray, c_base: np.ndarray) -> np.ndarray:
    # c(x_k) já observado no ponto base: nenhuma consulta extra
    return project_dual(y + cfg.beta * c_base, problem.y_upper)


# ===========================
# Passos
# ===========================
def zobgda_step(state: Iterate, problem, cfg: SolverConfig, rng: np.random.Generator) -> Iterate:
    """
    Um passo do ZOB-GDA:
      x_{k+1} = x_k − α G_x^{I_k}(x_k, y_k)      (projetado em X, se ativo)
      y_{k+1} = P_Y[y_k + β c(x_k)]
    Custo: b + 1 consultas.
    """
    _check_step(state, cfg)
    r = cfg.radius.radius(state.k)
    block = sample_block(problem.dim_x, cfg.block_size, rng)
    est = _estimate(state, bcge, problem, state.x, state.y, r, block)
    return Iterate(
        x=_primal(problem, cfg, state.x, est.grad),
        y=_dual(problem, cfg, state.y, est.c_base),
        k=state.k + 1,
    )


def zobsgda_step(state: Iterate, problem, cfg: SolverConfig, rng: np.random.Generator) -> Iterate:
    """
    Um passo do ZOB-SGDA sobre K(x, y; z) = f(x, y) + (p/2)‖x − z‖².
    ∇_y K = c(x_k), então o passo dual é o mesmo do ZOB-GDA; a âncora
    segue z_{k+1} = γ x_{k+1} + (1 − γ) z_k.
    """
    _check_step(state, cfg)
    if state.z is None:
        raise InvalidParameterError("ZOB-SGDA exige o iterado com z.")
    r = cfg.radius.radius(state.k)
    block = sample_block(problem.dim_x, cfg.block_size, rng)
    est = _estimate(state, smoothed_bcge, problem, state.x, state.y, state.z, cfg.p, r, block)
    x_next = _primal(problem, cfg, state.x, est.grad)
    z_next = x_next.copy() if cfg.gamma == 1 else cfg.gamma * x_next + (1.0 - cfg.gamma) * state.z
    return Iterate(
        x=x_next,
        y=_dual(problem, cfg, state.y, est.c_base),
        z=z_next,
        k=state.k + 1,
    )


def rge_gda_step(state: Iterate, problem, cfg: SolverConfig, rng: np.random.Generator) -> Iterate:
    """Linha de base: mesmo molde GDA com o RGE de dois pontos."""
    _check_step(state, cfg)
    r = cfg.radius.radius(state.k)
    direction = sample_direction(problem.dim_x, rng, cfg.direction_law)
    est = _estimate(state, rge, problem, state.x, state.y, r, direction)
    return Iterate(
        x=_primal(problem, cfg, state.x, est.grad),
        y=_dual(problem, cfg, state.y, est.c_base),
        k=state.k + 1,
    )


STEPS: Dict[Algorithm, StepFn] = {
    Algorithm.ZOB_GDA: zobgda_step,
    Algorithm.ZOB_SGDA: zobsgda_step,
    Algorithm.RGE_GDA: rge_gda_step,
}


# ===========================
# Laço
# ===========================
def _random_in_ball(d: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.standard_normal(d)
    return RANDOM_INIT_RADIUS * rng.uniform() ** (1.0 / d) * u / np.linalg.norm(u)


def initial_iterate(
    problem,
    cfg: SolverConfig,
    x0: Optional[np.ndarray] = None,
    rng: Optional[np.random.Generator] = None,
) -> Iterate:
    """
    Ponto inicial: x0 dado, ou sorteado (com `rng`: uniforme na caixa, ou na
    bola de raio RANDOM_INIT_RADIUS sem caixa), ou o meio da caixa (zero sem caixa). y0 = 0 e, no ZOB-SGDA, z0 = x0.
    """
    if x0 is None:
        if problem.x_box is not None:
            lower, upper = problem.x_box
            x0 = rng.uniform(lower, upper) if rng is not None else 0.5 * (lower + upper)
        else:
            x0 = _random_in_ball(problem.dim_x, rng) if rng is not None else np.zeros(problem.dim_x)
    x0 = np.array(x0, dtype=float)
    if cfg.project_x and problem.x_box is not None:
        x0 = project_box(x0, *problem.x_box)
    z0 = x0.copy() if cfg.algorithm is Algorithm.ZOB_SGDA else None
    return Iterate(x=x0, y=np.zeros(problem.dim_y), z=z0, k=0)


def run(
    problem,
    cfg: SolverConfig,
    callbacks: Sequence[Callback] = (),
    recorder=None,
    initial: Optional[Iterate] = None,
    keep_iterates: bool = True,
) -> RunTrace:
    """
    Executa K = cfg.max_iters passos e devolve o traço.

    Registro k = 0 é o ponto inicial; `queries_cum` conta só as consultas
    do solver (métricas usam o orçamento separado do problema).
    """
    K = int(cfg.max_iters)
    if cfg.radius.horizon < K:
        raise InvalidParameterError(
            f"horizonte dos raios ({cfg.radius.horizon}) menor que K={K}: "
            "a condição Σ_(k<=K) r_k² <= 1/b não está garantida."
        )
    if recorder is None:
        from ..metrics.recorder import TraceRecorder

        recorder = TraceRecorder.for_config(problem, cfg)

    step = STEPS[cfg.algorithm]
    streams = solver_streams(cfg.seed)
    rng = streams.directions if cfg.algorithm is Algorithm.RGE_GDA else streams.blocks
    state = initial if initial is not None else initial_iterate(problem, cfg)

    start_queries = problem.counter.total
    start_metrics = problem.metrics_counter.total
    start_log = len(problem.counter.per_iteration_log)
    trace = RunTrace(
        records=[recorder.record(state, queries_cum=0, final=K == 0)],
        config_fingerprint=fingerprint({"problem": problem.name, "dim_x": problem.dim_x, "solver": cfg.describe()}),
        seed=cfg.seed,
        algorithm=cfg.algorithm.value,
        block_size=cfg.block_size if cfg.algorithm.is_block else 1,
        iterates=[state] if keep_iterates else [],
    )
    for cb in callbacks:
        cb(state.k, state)

    logger.debug("run %s b=%d K=%d seed=%d", cfg.algorithm.value, cfg.block_size, K, cfg.seed)
    for k in range(K):
        try:
            state = step(state, problem, cfg, rng)
        except ZobError as e:
            trace.per_iteration_queries = problem.counter.per_iteration_log[start_log:]
            trace.metrics_queries = problem.metrics_counter.total - start_metrics
            raise RunFailedError(f"execução interrompida na iteração {k}: {e}", k, trace) from e
        problem.counter.close_iteration()
        trace.records.append(
            recorder.record(state, queries_cum=problem.counter.total - start_queries, final=k + 1 == K)
        )
        if keep_iterates:
            trace.iterates.append(state)
        for cb in callbacks:
            cb(state.k, state)

    trace.per_iteration_queries = problem.counter.per_iteration_log[start_log:]
    trace.metrics_queries = problem.metrics_counter.total - start_metrics
    logger.debug("fim %s: %d consultas", cfg.algorithm.value, trace.total_queries)
    return trace
