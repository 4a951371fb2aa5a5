# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Union

from ..algorithms import Algorithm, initial_iterate, probe_lipschitz, run
from ..errors import RunFailedError
from ..metrics import TraceRecorder
from ..problems import NoiseSpec, OracleProblem, wrap_noise
from ..trace import RunTrace
from ..utils import solver_streams
from .config import ExperimentPlan, RunCell

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CellFailure:
    label: str
    algorithm: str
    block_size: int
    seed: int
    k: Optional[int]
    error: str


@dataclass
class ExecutionReport:
    """Traços na ordem das células e falhas individuais (a execução não para)."""

    traces: List[RunTrace] = field(default_factory=list)
    failures: List[CellFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


# ===========================
# Montagem de uma célula
# ===========================
def resolve_h_star(plan: ExperimentPlan, problem: OracleProblem) -> Optional[float]:
    """Valor explícito > arquivo de fixture > referência conhecida do problema."""
    if plan.h_star is not None:
        return plan.h_star
    if plan.h_star_file is not None:
        from .hstar import load_hstar

        return load_hstar(plan.h_star_file, plan.problem).h_star
    if problem.reference is not None and problem.reference.h_star is not None:
        return problem.reference.h_star
    return None


def cell_problem(plan: ExperimentPlan, seed: int) -> OracleProblem:
    """Instância própria da célula; o ruído é re-semeado pela semente do run."""
    problem = plan.problem.build()
    if plan.noise is not None:
        spec = NoiseSpec.channels(
            objective=plan.noise.objective_std,
            constraints=plan.noise.constraint_std,
            dim_y=problem.dim_y,
            rng_seed=plan.noise.seed,
        )
        if spec.active:
            problem = wrap_noise(problem, spec.reseeded(seed))
    return problem


def _lipschitz_for(plan: ExperimentPlan, cell: RunCell, problem: OracleProblem) -> Optional[float]:
    entry = cell.entry
    if entry.lipschitz is not None:
        return entry.lipschitz
    if plan.metrics.lipschitz is not None:
        return plan.metrics.lipschitz
    if entry.theory or plan.metrics.moreau:
        # sondagem determinística (semente do problema), orçamento de métricas
        return probe_lipschitz(problem, seed=plan.problem.seed).L_hat
    return None


def run_cell(cell: RunCell, h_star: Optional[float] = None) -> RunTrace:
    plan, entry = cell.plan, cell.entry
    problem = cell_problem(plan, cell.seed)
    L = _lipschitz_for(plan, cell, problem)
    cfg = plan.solver_config(entry, cell.seed, L=L)

    recorder = TraceRecorder.for_config(
        problem,
        cfg,
        h_star=h_star,
        moreau_L=L if plan.metrics.moreau else None,
        moreau_stride=plan.metrics.stride,
        fallback=plan.metrics.fallback_cge,
    )
    rng = solver_streams(cell.seed).init if plan.init == "random" else None
    initial = initial_iterate(problem, cfg, rng=rng)
    trace = run(problem, cfg, recorder=recorder, initial=initial, keep_iterates=False)
    trace.config_fingerprint = plan.fingerprint_for(entry)
    trace.label = entry.name
    return trace


def _execute_cell(cell: RunCell, h_star: Optional[float]) -> Union[RunTrace, CellFailure]:
    entry = cell.entry
    b = entry.block_size if entry.algorithm is not Algorithm.RGE_GDA else 1
    try:
        return run_cell(cell, h_star)
    except RunFailedError as e:
        error, k = str(e), e.k
    except Exception as e:
        error, k = f"{type(e).__name__}: {e}", None
    return CellFailure(
        label=entry.name,
        algorithm=entry.algorithm.value,
        block_size=b,
        seed=cell.seed,
        k=k,
        error=error,
    )


# ===========================
# Execução do plano
# ===========================
def execute(plan: ExperimentPlan, jobs: int = 1) -> ExecutionReport:
    """
    Roda todas as células (solver, semente). Com jobs > 1 usa processos;
    o resultado é reordenado na ordem de `plan.cells()`, então a saída é
    a mesma em série ou em paralelo.
    """
    h_star = resolve_h_star(plan, plan.problem.build())
    if h_star is None:
        logger.info("sem h*: rel_error ficará vazio (rode oracle-hstar para gerar a fixture)")

    cells = plan.cells()
    logger.info("executando %d células com jobs=%d", len(cells), jobs)
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=int(jobs)) as pool:
            results = list(pool.map(_execute_cell, cells, [h_star] * len(cells)))
    else:
        results = [_execute_cell(cell, h_star) for cell in cells]

    report = ExecutionReport()
    for cell, result in zip(cells, results):
        if isinstance(result, CellFailure):
            logger.warning("célula %s seed=%d falhou: %s", result.label, result.seed, result.error)
            report.failures.append(result)
        else:
            logger.info("célula %s seed=%d: %d consultas", result.label, result.seed, result.total_queries)
            report.traces.append(result)
    return report


def default_hstar_path(plan: ExperimentPlan) -> Path:
    return Path(plan.out_dir) / "hstar.json"
