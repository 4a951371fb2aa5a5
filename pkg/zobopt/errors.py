# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import List, Optional, Sequence

import numpy as np


class ZobError(Exception):
    """Raiz de todos os erros do zobopt."""


# ===========================
# Validação (entrada / configuração)
# ===========================
class InputDomainError(ZobError, ValueError):
    pass


class InvalidDimensionError(ZobError, ValueError):
    pass


class InvalidSpecError(ZobError, ValueError):
    pass


class InvalidBlockError(ZobError, ValueError):
    pass


class InvalidRadiusError(ZobError, ValueError):
    pass


class InvalidParameterError(ZobError, ValueError):
    pass


class DimensionMismatchError(ZobError, ValueError):
    pass


class ConfigError(ZobError, ValueError):
    """
    Erro de configuração do plano de experimentos.
    `unknown_keys` lista as chaves não reconhecidas (quando for o caso).
    """

    def __init__(self, message: str, unknown_keys: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.unknown_keys: List[str] = list(unknown_keys or [])


# ===========================
# Execução
# ===========================
class OracleFailureError(ZobError, RuntimeError):
    """O oráculo devolveu valores não finitos no ponto `x`."""

    def __init__(self, message: str, x: np.ndarray):
        super().__init__(message)
        self.x = np.array(x, dtype=float, copy=True)


class UnsupportedMetricError(ZobError, RuntimeError):
    pass


class MoreauConvergenceError(ZobError, RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = float(residual)


class SolverStepError(ZobError, RuntimeError):
    def __init__(self, message: str, k: int):
        super().__init__(message)
        self.k = int(k)


class RunFailedError(ZobError, RuntimeError):
    """Falha de uma execução inteira; guarda o k que falhou e o traço parcial."""

    def __init__(self, message: str, k: int, partial=None):
        super().__init__(message)
        self.k = int(k)
        self.partial = partial


class MissingFixtureError(ZobError, RuntimeError):
    pass
