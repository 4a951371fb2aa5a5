# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..errors import InvalidSpecError
from .oracle import OracleProblem


@dataclass(frozen=True)
class NoiseSpec:
    """
    Ruído gaussiano aditivo, média zero, por canal observado.
    `std_dev` é um escalar (todos os canais) ou um vetor de tamanho
    1 + dim_y com o canal do objetivo primeiro.
    """

    std_dev: Union[float, tuple] = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        std = np.atleast_1d(np.asarray(self.std_dev, dtype=float))
        if not np.all(np.isfinite(std)) or np.any(std < 0):
            raise InvalidSpecError(f"std_dev deve ser finito e >= 0 (recebido {self.std_dev!r}).")
        if std.size > 1:
            object.__setattr__(self, "std_dev", tuple(float(s) for s in std))

    @classmethod
    def channels(
        cls,
        objective: float = 0.0,
        constraints: Union[float, Sequence[float]] = 0.0,
        dim_y: int = 1,
        rng_seed: int = 0,
    ) -> "NoiseSpec":
        cons = np.broadcast_to(np.asarray(constraints, dtype=float), (dim_y,))
        return cls(std_dev=tuple([float(objective), *map(float, cons)]), rng_seed=rng_seed)

    @property
    def active(self) -> bool:
        return bool(np.any(np.asarray(self.std_dev, dtype=float) > 0))

    def std_vector(self, dim_y: int) -> np.ndarray:
        std = np.atleast_1d(np.asarray(self.std_dev, dtype=float))
        if std.size == 1:
            return np.full(1 + dim_y, float(std[0]))
        if std.size != 1 + dim_y:
            raise InvalidSpecError(f"std_dev tem {std.size} canais, esperado {1 + dim_y}.")
        return std

    def reseeded(self, offset: int) -> "NoiseSpec":
        return NoiseSpec(std_dev=self.std_dev, rng_seed=int(self.rng_seed) + int(offset))


def wrap_noise(problem: OracleProblem, spec: NoiseSpec) -> OracleProblem:
    """
    Devolve um novo problema cujas consultas recebem ruído por canal.
    A contagem é a mesma; os gradientes verdadeiros passam intactos.
    """
    if not isinstance(spec, NoiseSpec):
        raise InvalidSpecError("spec deve ser um NoiseSpec.")
    spec.std_vector(problem.dim_y)
    return OracleProblem(
        dim_x=problem.dim_x,
        y_upper=problem.y_upper.copy(),
        evaluator=problem._evaluator,
        true_grads=problem._true_grads,
        x_box=problem.x_box,
        reference=problem.reference,
        name=problem.name,
        noise=spec,
    )
