# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

TRACE_COLUMNS = ["k", "queries", "h", "violation", "g_norm", "moreau_norm", "rel_error", "seed", "algorithm", "b"]


@dataclass
class TraceRecord:
    """Uma linha do traço: métricas do iterado k (sem ruído)."""

    k: int
    queries_cum: int
    h: float
    max_violation: float
    g_norm: Optional[float]
    moreau_norm: Optional[float] = None
    rel_error: Optional[float] = None
    approximate: bool = False


@dataclass
class RunTrace:
    records: List[TraceRecord]
    config_fingerprint: str
    seed: int
    algorithm: str
    block_size: int
    label: str = ""
    iterates: List[Any] = field(default_factory=list)
    per_iteration_queries: List[int] = field(default_factory=list)
    metrics_queries: int = 0

    @property
    def total_queries(self) -> int:
        return self.records[-1].queries_cum if self.records else 0

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "k": r.k,
                "queries": r.queries_cum,
                "h": r.h,
                "violation": r.max_violation,
                "g_norm": r.g_norm,
                "moreau_norm": r.moreau_norm,
                "rel_error": r.rel_error,
                "seed": self.seed,
                "algorithm": self.algorithm,
                "b": self.block_size,
            }
            for r in self.records
        ]
