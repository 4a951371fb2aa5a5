# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ..errors import InvalidParameterError
from ..estimators import DIRECTION_LAWS, RadiusSchedule


class Algorithm(str, Enum):
    ZOB_GDA = "zob_gda"
    ZOB_SGDA = "zob_sgda"
    RGE_GDA = "rge_gda"

    @property
    def is_block(self) -> bool:
        return self is not Algorithm.RGE_GDA


@dataclass
class Iterate:
    """Estado do solver: (x_k, y_k) e, no ZOB-SGDA, a âncora z_k."""

    x: np.ndarray
    y: np.ndarray
    z: Optional[np.ndarray] = None
    k: int = 0


@dataclass(frozen=True)
class SolverConfig:
    """
    Parâmetros de uma execução.

    `gamma` e `p` só valem para ZOB-SGDA; p = 0 com gamma = 1 reproduz o
    ZOB-GDA. `block_size` é ignorado pelo RGE-GDA (duas consultas por passo).
    """

    algorithm: Algorithm
    alpha: float
    beta: float
    radius: RadiusSchedule
    block_size: int = 1
    max_iters: int = 0
    gamma: float = 1.0
    p: float = 0.0
    seed: int = 0
    project_x: bool = False
    direction_law: str = "gaussian"

    def __post_init__(self):
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        for name in ("alpha", "beta", "p"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise InvalidParameterError(f"{name} deve ser finito e >= 0 (recebido {value}).")
        if not 0 < self.gamma <= 1:
            raise InvalidParameterError(f"gamma deve estar em (0, 1] (recebido {self.gamma}).")
        if int(self.block_size) < 1:
            raise InvalidParameterError("block_size deve ser >= 1.")
        if int(self.max_iters) < 0:
            raise InvalidParameterError("max_iters deve ser >= 0.")
        if self.direction_law not in DIRECTION_LAWS:
            raise InvalidParameterError(f"direction_law deve ser um de {DIRECTION_LAWS}.")

    @property
    def queries_per_step(self) -> int:
        return self.block_size + 1 if self.algorithm.is_block else 2

    def describe(self) -> Dict[str, Any]:
        """Dicionário estável (sem a semente) para fingerprints e logs."""
        out = asdict(self)
        out.pop("seed")
        out["algorithm"] = self.algorithm.value
        return out
