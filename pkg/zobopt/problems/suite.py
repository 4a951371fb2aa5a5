# -*- coding: utf-8 -*-
from __future__ import annotations

from typing import Callable, Dict, Tuple

import numpy as np

from ..errors import InvalidDimensionError, InvalidSpecError
from .oracle import OracleProblem, ReferencePoint

QUAD_BALL_Y_UPPER = 10.0

# Rede sintética (análogo do problema de corte de carga)
GRID_V_LOW = 0.96
GRID_V_HIGH = 1.04
GRID_HIDDEN = 3
GRID_VOLTAGE_SPREAD = 0.06
GRID_CURTAIL_FRACTION = 0.9     # D = 0.9 * p_c no minimizador da parte quadrática
GRID_Y_UPPER = 20.0


def make_quad_ball(d: int, seed: int = 0) -> OracleProblem:
    """
    h(x) = ½‖x − x0‖², c(x) = ‖x‖² − 1, com ‖x0‖ = 2 sorteado pela semente.
    Ponto KKT conhecido: x* = x0/2, y* = ½ (h* = ½).
    """
    d = int(d)
    if d < 1:
        raise InvalidDimensionError(f"quad-ball exige d >= 1 (recebido {d}).")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(d)
    while not np.linalg.norm(u) > 0:
        u = rng.standard_normal(d)
    x0 = 2.0 * u / np.linalg.norm(u)

    def evaluator(x: np.ndarray) -> Tuple[float, np.ndarray]:
        diff = x - x0
        return 0.5 * float(diff @ diff), np.array([float(x @ x) - 1.0])

    def grads(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return x - x0, (2.0 * x)[None, :]

    return OracleProblem(
        dim_x=d,
        y_upper=[QUAD_BALL_Y_UPPER],
        evaluator=evaluator,
        true_grads=grads,
        reference=ReferencePoint(x=x0 / 2.0, y=np.array([0.5]), h_star=0.5),
        name="quad_ball",
    )


def make_toy_grid(d: int, seed: int = 0) -> OracleProblem:
    """
    Análogo sintético do problema de corte de carga numa rede de distribuição.

    x(i) é a carga cortada do usuário i, x ∈ [0, x̄]:
      h(x) = Σ a_i x(i)² + b_i x(i) + ρ(x)
      ρ(x) = Σ_j max(v_j − v̄, 0)² + max(v̲ − v_j, 0)²,  v_j = 1 + ε_jᵀ tanh(W_j x)

    Convenção de sinal da restrição. A superfície de corte é
      s(x) = Σ x(i) + qᵀ tanh(M x)
    e a injeção na rede é o que sobra da carga nominal P0 = Σ x̄(i):
      p_c(x) = P0 − s(x),   c(x) = p_c(x) − D ≤ 0,   D = 0.9 p_c(x_quad).
    Lida literalmente como s(x) − D ≤ 0, a restrição seria folgada em x = 0
    (c = −D) e o minimizador da parte quadrática já seria viável; com a
    injeção, x = 0 viola c por 0.1 p_c(0) e é preciso cortar ao menos
    P0 − D de carga. O gradiente de c é −∇s.
    """
    d = int(d)
    if d < 2:
        raise InvalidDimensionError(f"toy-grid exige d >= 2 (recebido {d}).")
    rng = np.random.default_rng(seed)

    a = rng.uniform(0.5, 1.5, d)
    b = rng.uniform(0.0, 5.0, d)
    x_bar = rng.uniform(0.5, 1.5, d)

    n_nodes = max(4, d // 2)
    W = rng.standard_normal((n_nodes, GRID_HIDDEN, d)) / np.sqrt(d)
    eps = rng.uniform(-1.0, 1.0, (n_nodes, GRID_HIDDEN))
    eps *= GRID_VOLTAGE_SPREAD / np.abs(eps).sum(axis=1, keepdims=True)

    m = max(2, d // 4)
    M = rng.standard_normal((m, d)) / np.sqrt(d)
    q = rng.uniform(-0.1, 0.1, m)
    P0 = float(x_bar.sum())

    def voltages(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        T = np.tanh(np.tensordot(W, x, axes=([2], [0])))
        return 1.0 + np.sum(eps * T, axis=1), T

    def curtailed(x: np.ndarray) -> float:
        return float(x.sum() + q @ np.tanh(M @ x))

    x_quad = np.clip(-b / (2.0 * a), 0.0, x_bar)
    D = GRID_CURTAIL_FRACTION * (P0 - curtailed(x_quad))

    def evaluator(x: np.ndarray) -> Tuple[float, np.ndarray]:
        v, _ = voltages(x)
        rho = float(np.sum(np.maximum(v - GRID_V_HIGH, 0.0) ** 2 + np.maximum(GRID_V_LOW - v, 0.0) ** 2))
        h = float(a @ (x * x) + b @ x) + rho
        return h, np.array([P0 - curtailed(x) - D])

    def grads(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        v, T = voltages(x)
        grad_v = np.einsum("nh,nhd->nd", eps * (1.0 - T * T), W)
        coef = 2.0 * (np.maximum(v - GRID_V_HIGH, 0.0) - np.maximum(GRID_V_LOW - v, 0.0))
        grad_h = 2.0 * a * x + b + coef @ grad_v
        grad_c = -(1.0 + M.T @ (q * (1.0 - np.tanh(M @ x) ** 2)))
        return grad_h, grad_c[None, :]

    return OracleProblem(
        dim_x=d,
        y_upper=[GRID_Y_UPPER],
        evaluator=evaluator,
        true_grads=grads,
        x_box=(np.zeros(d), x_bar),
        name="toy_grid",
    )


PROBLEM_BUILDERS: Dict[str, Callable[[int, int], OracleProblem]] = {
    "quad_ball": make_quad_ball,
    "toy_grid": make_toy_grid,
}


def build_problem(kind: str, dim: int, seed: int = 0) -> OracleProblem:
    builder = PROBLEM_BUILDERS.get(kind)
    if builder is None:
        raise InvalidSpecError(f"problema desconhecido: {kind!r} (opções: {sorted(PROBLEM_BUILDERS)}).")
    return builder(dim, seed)
