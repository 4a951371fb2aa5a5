# -*- coding: utf-8 -*-
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
import pandas as pd

from ..errors import MissingFixtureError
from ..trace import TRACE_COLUMNS, RunTrace

SUMMARY_COLUMNS = [
    "algorithm",
    "block_size",
    "target_rel_error",
    "mean_iterations",
    "mean_queries",
    "success_fraction",
]


@dataclass(frozen=True)
class SummaryRow:
    """
    Média de iterações e consultas até a primeira iteração com
    rel_error <= alvo e violação <= 0. Sem nenhum sucesso, as médias
    ficam NaN.
    """

    algorithm: str
    block_size: int
    target_rel_error: float
    mean_iterations: float
    mean_queries: float
    success_fraction: float


def _first_hit(group: pd.DataFrame, target: float):
    feasible = group["violation"] <= 0
    if math.isinf(target):
        hit = feasible
    else:
        hit = feasible & (group["rel_error"] <= target)
    if not hit.any():
        return None
    row = group.loc[hit.idxmax()]
    return int(row["k"]), int(row["queries"])


def summarize_frame(df: pd.DataFrame, targets: Sequence[float]) -> List[SummaryRow]:
    """Mesmo que `summarize`, mas a partir de um CSV de traços já lido."""
    finite = [t for t in targets if not math.isinf(float(t))]
    if finite and not df.empty and ("rel_error" not in df or df["rel_error"].isna().all()):
        raise MissingFixtureError(
            "os traços não têm rel_error: gere a fixture de h* com `oracle-hstar` e rode de novo."
        )

    rows: List[SummaryRow] = []
    df = df.sort_values(["seed", "k"], kind="stable")
    for (algorithm, b), cell in df.groupby(["algorithm", "b"], sort=False):
        per_seed = [g for _, g in cell.groupby("seed", sort=True)]
        for target in targets:
            hits = [h for h in (_first_hit(g, float(target)) for g in per_seed) if h is not None]
            if hits:
                iters, queries = np.mean([h[0] for h in hits]), np.mean([h[1] for h in hits])
            else:
                iters, queries = float("nan"), float("nan")
            rows.append(
                SummaryRow(
                    algorithm=str(algorithm),
                    block_size=int(b),
                    target_rel_error=float(target),
                    mean_iterations=float(iters),
                    mean_queries=float(queries),
                    success_fraction=len(hits) / len(per_seed),
                )
            )
    return rows


def summarize(traces: Sequence[RunTrace], targets: Sequence[float]) -> List[SummaryRow]:
    rows = [row for t in traces for row in t.rows()]
    df = pd.DataFrame(rows, columns=TRACE_COLUMNS).astype({"rel_error": float, "violation": float})
    return summarize_frame(df, targets)
