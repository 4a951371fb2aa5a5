# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class SolverStreams:
    """
    Fluxos aleatórios independentes de uma execução:
      - blocks: sorteio dos blocos I_k
      - directions: direções do RGE
      - init: ponto inicial aleatório
    """

    blocks: np.random.Generator
    directions: np.random.Generator
    init: np.random.Generator


def solver_streams(seed: int) -> SolverStreams:
    blocks, directions, init = np.random.SeedSequence(int(seed)).spawn(3)
    return SolverStreams(
        blocks=np.random.default_rng(blocks),
        directions=np.random.default_rng(directions),
        init=np.random.default_rng(init),
    )
