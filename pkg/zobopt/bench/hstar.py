# -*- coding: utf-8 -*-
from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from scipy.optimize import minimize

from ..algorithms import Algorithm, SolverConfig, project_box, run
from ..errors import MissingFixtureError
from ..estimators import RadiusSchedule
from ..problems import OracleProblem, true_gradients
from ..trace import TraceRecord
from .config import ExperimentPlan, ProblemSpec

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = 1e-9
HSTAR_ALPHA_DEFAULT = 0.01
HSTAR_BETA_DEFAULT = 0.01


@dataclass(frozen=True)
class HStarFixture:
    kind: str
    dim: int
    seed: int
    h_star: float
    x_star: List[float]
    source: str = "zob_sgda+slsqp"

    def matches(self, spec: ProblemSpec) -> bool:
        return (self.kind, self.dim, self.seed) == (spec.kind, spec.dim, spec.seed)


class _FinalOnlyRecorder:
    """Só o iterado final é avaliado; o resto do traço fica como marcador."""

    def __init__(self, problem: OracleProblem):
        self.problem = problem
        self.last_x: Optional[np.ndarray] = None

    def record(self, state, queries_cum: int, final: bool = False) -> TraceRecord:
        self.last_x = state.x
        if not final:
            return TraceRecord(k=state.k, queries_cum=queries_cum, h=float("nan"), max_violation=float("nan"), g_norm=None)
        h, c = self.problem.evaluate_exact(state.x)
        return TraceRecord(
            k=state.k,
            queries_cum=queries_cum,
            h=h,
            max_violation=float(np.max(c)) if c.size else 0.0,
            g_norm=None,
        )


def _first_value(plan: ExperimentPlan, name: str, default: float) -> float:
    value = getattr(plan.hstar, name)
    if value is not None:
        return float(value)
    for entry in plan.solvers:
        if getattr(entry, name) is not None:
            return float(getattr(entry, name))
    return default


def _zo_phase(plan: ExperimentPlan, problem: OracleProblem) -> np.ndarray:
    d = problem.dim_x
    K_long = int(plan.hstar.budget_factor) * max(int(plan.max_iters), 1)
    radius = RadiusSchedule.auto(
        r0=plan.radius.r0,
        decay_exponent=plan.radius.decay_exponent,
        cap=plan.radius.cap,
        block_size=d,
        horizon=K_long,
    )
    cfg = SolverConfig(
        algorithm=Algorithm.ZOB_SGDA,
        alpha=_first_value(plan, "alpha", HSTAR_ALPHA_DEFAULT),
        beta=_first_value(plan, "beta", HSTAR_BETA_DEFAULT),
        radius=radius,
        block_size=d,
        max_iters=K_long,
        gamma=plan.hstar.gamma,
        p=plan.hstar.p,
        seed=plan.problem.seed,
        project_x=problem.x_box is not None,
    )
    recorder = _FinalOnlyRecorder(problem)
    logger.info("h*: fase ZO com CGE completo, %d iterações", K_long)
    run(problem, cfg, recorder=recorder, keep_iterates=False)
    return recorder.last_x


def _polish(problem: OracleProblem, x0: np.ndarray) -> np.ndarray:
    """SLSQP com gradientes verdadeiros a partir do ponto da fase ZO."""

    def fun(x):
        return problem.evaluate_exact(x)[0]

    def jac(x):
        return true_gradients(problem, x)[0]

    constraints = []
    if problem.dim_y:
        constraints.append(
            {
                "type": "ineq",
                "fun": lambda x: -problem.evaluate_exact(x)[1],
                "jac": lambda x: -true_gradients(problem, x)[1],
            }
        )
    bounds = list(zip(*problem.x_box)) if problem.x_box is not None else None
    res = minimize(fun, x0, jac=jac, bounds=bounds, constraints=constraints, method="SLSQP",
                   options={"maxiter": 2000, "ftol": 1e-15})
    if not res.success:
        logger.warning("polimento SLSQP: %s", res.message)
    x = res.x
    if problem.x_box is not None:
        x = project_box(x, *problem.x_box)
    return x


def compute_hstar(plan: ExperimentPlan) -> HStarFixture:
    """
    Referência h* derivada: execução longa de ZOB-SGDA com bloco completo
    seguida de polimento SLSQP; fica o menor valor viável entre os dois.
    """
    problem = plan.problem.build()
    x_zo = _zo_phase(plan, problem)
    candidates = [x_zo]
    if problem.has_true_grads:
        candidates.append(_polish(problem, x_zo))

    scored = []
    for x in candidates:
        h, c = problem.evaluate_exact(x)
        scored.append((float(np.max(c)) if c.size else 0.0, h, x))
    feasible = [s for s in scored if s[0] <= FEASIBILITY_TOL]
    if feasible:
        _, best_h, best_x = min(feasible, key=lambda s: s[1])
    else:
        best_viol, best_h, best_x = min(scored, key=lambda s: s[0])
        logger.warning("h*: nenhum candidato viável (violação %.3g)", best_viol)

    logger.info("h* = %.10g (%d consultas de métricas)", best_h, problem.metrics_counter.total)
    spec = plan.problem
    return HStarFixture(
        kind=spec.kind,
        dim=spec.dim,
        seed=spec.seed,
        h_star=float(best_h),
        x_star=[float(v) for v in best_x],
    )


def save_hstar(fixture: HStarFixture, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    with os.fdopen(fd, "w", encoding="utf-8") as f:
        json.dump(fixture.__dict__, f, indent=2)
    os.replace(tmp, path)
    return path


def load_hstar(path: Union[str, Path], spec: Optional[ProblemSpec] = None) -> HStarFixture:
    path = Path(path)
    if not path.exists():
        raise MissingFixtureError(f"fixture de h* não encontrada em {path}: rode `oracle-hstar` antes.")
    with open(path, encoding="utf-8") as f:
        fixture = HStarFixture(**json.load(f))
    if spec is not None and not fixture.matches(spec):
        raise MissingFixtureError(
            f"fixture {path} é de {fixture.kind} d={fixture.dim} seed={fixture.seed}, "
            f"não de {spec.kind} d={spec.dim} seed={spec.seed}: rode `oracle-hstar` de novo."
        )
    return fixture
