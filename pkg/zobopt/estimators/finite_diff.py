# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ..errors import DimensionMismatchError, InvalidBlockError, InvalidRadiusError
from .blocks import BlockSample

DIRECTION_LAWS = ("gaussian", "sphere")


class GradientEstimate(NamedTuple):
    """
    Estimativa de ∇_x f(x, y) mais o que foi observado no ponto base.
    `c_base` alimenta o passo dual sem consultas extras.
    """

    grad: np.ndarray
    h_base: float
    c_base: np.ndarray
    queries: int


def lagrangian(h: float, c: np.ndarray, y: np.ndarray) -> float:
    """f(x, y) = h(x) + yᵀc(x)."""
    if c.size == 0:
        return h
    return h + float(np.dot(y, c))


def _check_radius(r: float) -> float:
    r = float(r)
    if not (r > 0 and np.isfinite(r)):
        raise InvalidRadiusError(f"o raio de suavização deve ser > 0 (recebido {r}).")
    return r


def sample_direction(d: int, rng: np.random.Generator, law: str = "gaussian") -> np.ndarray:
    """Direção do RGE: N(0, I) ou uniforme na esfera de raio √d."""
    z = rng.standard_normal(int(d))
    if law == "gaussian":
        return z
    if law == "sphere":
        return np.sqrt(d) * z / np.linalg.norm(z)
    raise ValueError(f"lei de direção desconhecida: {law!r} (opções: {DIRECTION_LAWS}).")


def rge(problem, x: np.ndarray, y: np.ndarray, r: float, direction: np.ndarray) -> GradientEstimate:
    """
    Estimador aleatório de dois pontos:
    ((f(x + r z, y) − f(x, y)) / r) · z, duas consultas.
    """
    r = _check_radius(r)
    x = np.asarray(x, dtype=float)
    z = np.asarray(direction, dtype=float)
    if z.shape != x.shape:
        raise DimensionMismatchError("direção e x com formas diferentes.")
    h0, c0 = problem.evaluate(x)
    h1, c1 = problem.evaluate(x + r * z)
    slope = (lagrangian(h1, c1, y) - lagrangian(h0, c0, y)) / r
    return GradientEstimate(grad=slope * z, h_base=h0, c_base=c0, queries=2)


def bcge(problem, x: np.ndarray, y: np.ndarray, r: float, block: BlockSample) -> GradientEstimate:
    """
    Estimador por coordenadas restrito ao bloco I_k.

    Entradas fora do bloco ficam exatamente 0. Uma avaliação base
    compartilhada mais uma por coordenada: b + 1 consultas.
    """
    r = _check_radius(r)
    x = np.asarray(x, dtype=float)
    idx = block.indices
    if idx[-1] >= x.size:
        raise InvalidBlockError(f"bloco com índice {idx[-1]} fora de [0, {x.size}).")

    h0, c0 = problem.evaluate(x)
    f0 = lagrangian(h0, c0, y)
    grad = np.zeros_like(x)
    probe = x.copy()
    for i in idx:
        probe[i] = x[i] + r
        hi, ci = problem.evaluate(probe)
        grad[i] = (lagrangian(hi, ci, y) - f0) / r
        probe[i] = x[i]
    return GradientEstimate(grad=grad, h_base=h0, c_base=c0, queries=idx.size + 1)


def cge_full(problem, x: np.ndarray, y: np.ndarray, r: float) -> GradientEstimate:
    return bcge(problem, x, y, r, BlockSample.full(np.asarray(x).size))


def smoothed_bcge(
    problem,
    x: np.ndarray,
    y: np.ndarray,
    z: np.ndarray,
    p: float,
    r: float,
    block: BlockSample,
) -> GradientEstimate:
    """
    BCGE de K(x, y; z) = f(x, y) + (p/2)‖x − z‖²: o termo proximal é
    analítico e só entra nas coordenadas do bloco.
    """
    z = np.asarray(z, dtype=float)
    if z.shape != np.shape(x):
        raise DimensionMismatchError("z deve ter o mesmo tamanho de x.")
    if p < 0:
        raise ValueError("p deve ser >= 0.")
    est = bcge(problem, x, y, r, block)
    if p == 0:
        return est
    idx = block.indices
    grad = est.grad
    grad[idx] += p * (np.asarray(x, dtype=float)[idx] - z[idx])
    return est._replace(grad=grad)
