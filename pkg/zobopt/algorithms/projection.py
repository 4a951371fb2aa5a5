# -*- coding: utf-8 -*-
from __future__ import annotations

import numpy as np

from ..errors import DimensionMismatchError, InvalidParameterError


def project_box(v: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Projeção euclidiana numa caixa (clamp por coordenada), idempotente."""
    v = np.asarray(v, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    for bound in (lower, upper):
        if bound.ndim and bound.shape != v.shape:
            raise DimensionMismatchError(f"caixa com forma {bound.shape}, vetor com forma {v.shape}.")
    if np.any(lower > upper):
        raise InvalidParameterError("caixa inválida: lower > upper.")
    return np.minimum(np.maximum(v, lower), upper)


def project_dual(y: np.ndarray, y_upper: np.ndarray) -> np.ndarray:
    """P_Y com Y = [0, ȳ]."""
    return project_box(y, np.zeros_like(y_upper), y_upper)
