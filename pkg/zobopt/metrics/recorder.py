# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import MoreauConvergenceError, OracleFailureError, UnsupportedMetricError
from ..trace import TraceRecord
from .kkt import relative_error
from .moreau import MoreauConfig, moreau_gradient
from .stationarity import prox_grad_stationarity

MOREAU_STRIDE_DEFAULT = 10


class TraceRecorder:
    """
    Monta os registros do traço a partir dos iterados.

    Tudo é avaliado sem ruído e no orçamento de métricas. O envelope de
    Moreau só é calculado a cada `moreau_stride` iterações e no iterado
    final, e apenas quando `moreau_L` é dado.
    """

    def __init__(
        self,
        problem,
        beta: float,
        alpha: Optional[float] = None,
        project_x: bool = False,
        h_star: Optional[float] = None,
        moreau_L: Optional[float] = None,
        moreau_stride: int = MOREAU_STRIDE_DEFAULT,
        moreau_cfg: Optional[MoreauConfig] = None,
        fallback: bool = True,
    ):
        self.problem = problem
        self.beta = beta
        self.alpha = alpha
        self.project_x = project_x and problem.x_box is not None and bool(alpha)
        self.h_star = h_star
        self.moreau_L = moreau_L
        self.moreau_stride = max(1, int(moreau_stride))
        self.moreau_cfg = moreau_cfg or MoreauConfig(
            project_x=self.project_x, fallback=fallback, lipschitz_phi=moreau_L
        )
        self.fallback = fallback

    @classmethod
    def for_config(cls, problem, cfg, **kwargs) -> "TraceRecorder":
        ref = problem.reference
        kwargs.setdefault("h_star", ref.h_star if ref is not None else None)
        return cls(problem, beta=cfg.beta, alpha=cfg.alpha, project_x=cfg.project_x, **kwargs)

    def record(self, state, queries_cum: int, final: bool = False) -> TraceRecord:
        h, c = self.problem.evaluate_exact(state.x)
        violation = float(np.max(c)) if c.size else 0.0

        g_norm, approximate = None, False
        if self.beta > 0:
            try:
                rep = prox_grad_stationarity(
                    self.problem,
                    state.x,
                    state.y,
                    self.beta,
                    alpha=self.alpha,
                    project_x=self.project_x,
                    fallback=self.fallback,
                    observed=(h, c),
                )
                g_norm, approximate = rep.g_norm, rep.approximate
            except UnsupportedMetricError:
                pass

        moreau = None
        if self.moreau_L is not None and (final or state.k % self.moreau_stride == 0):
            try:
                moreau = moreau_gradient(self.problem, state.x, self.moreau_L, self.moreau_cfg)
            except (MoreauConvergenceError, OracleFailureError, UnsupportedMetricError):
                moreau = None

        rel = relative_error(h, self.h_star) if self.h_star is not None else None
        return TraceRecord(
            k=state.k,
            queries_cum=int(queries_cum),
            h=h,
            max_violation=violation,
            g_norm=g_norm,
            moreau_norm=moreau,
            rel_error=rel,
            approximate=approximate,
        )
