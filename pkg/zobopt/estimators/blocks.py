# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable

import numpy as np

from ..errors import InvalidBlockError


@dataclass(frozen=True)
class BlockSample:
    """Subconjunto I_k ⊆ [d] de tamanho b, ordenado e sem repetições."""

    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.intp).reshape(-1)
        if idx.size == 0:
            raise InvalidBlockError("bloco vazio: b deve ser >= 1.")
        idx = np.sort(idx)
        if np.any(np.diff(idx) == 0):
            raise InvalidBlockError("bloco com índices repetidos.")
        if idx[0] < 0:
            raise InvalidBlockError("bloco com índice negativo.")
        idx.setflags(write=False)
        object.__setattr__(self, "indices", idx)

    @property
    def size(self) -> int:
        return int(self.indices.size)

    @classmethod
    def full(cls, d: int) -> "BlockSample":
        return cls(np.arange(int(d)))

    @classmethod
    def of(cls, indices: Iterable[int]) -> "BlockSample":
        return cls(np.fromiter(indices, dtype=np.intp))


def sample_block(d: int, b: int, rng: np.random.Generator) -> BlockSample:
    """
    Sorteio uniforme de um subconjunto de tamanho b de [0, d).

    Fisher–Yates parcial sobre uma permutação implícita: só as posições
    trocadas ficam no dicionário, então o custo é O(b).
    """
    d, b = int(d), int(b)
    if not 1 <= b <= d:
        raise InvalidBlockError(f"tamanho de bloco inválido: exige 1 <= b <= d (b={b}, d={d}).")
    if b == d:
        return BlockSample.full(d)

    swapped: Dict[int, int] = {}
    chosen = np.empty(b, dtype=np.intp)
    for i in range(b):
        j = int(rng.integers(i, d))
        chosen[i] = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
    return BlockSample(chosen)
