# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import lsq_linear, minimize

from ..algorithms.projection import project_box
from ..errors import InputDomainError, InvalidParameterError, MoreauConvergenceError, OracleFailureError
from .gradients import lagrangian_gradients

logger = logging.getLogger(__name__)

MOREAU_METHODS = ("auto", "subgradient", "slsqp")
ACTIVE_TOL = 1e-7          # |c_j| abaixo disso conta como dobradiça ativa
MIN_STEP_RATIO = 1e-10
STALL_ITERS = 20
SLSQP_FTOL = 1e-10
FALLBACK_ACCEPT_TOL = 1e-4  # gradientes por CGE têm erro O(r)


@dataclass(frozen=True)
class MoreauConfig:
    """
    Solver interno de x̂ = argmin_u Φ(u) + L‖u − x‖².

    `lipschitz_phi` fixa o passo inicial 1/(2(L_Φ + 2L)); sem ela parte-se
    de L e o passo é reduzido por backtracking. `method="auto"` tenta
    subgradiente e cai para SLSQP na forma epigráfica. Um ponto só é aceito
    quando o resíduo de otimalidade do problema interno fica <= `accept_tol`.
    """

    max_iters: int = 10_000
    tol: float = 1e-8
    accept_tol: float = 1e-6
    lipschitz_phi: Optional[float] = None
    method: str = "auto"
    project_x: bool = False
    fallback: bool = False

    def __post_init__(self):
        if self.method not in MOREAU_METHODS:
            raise InvalidParameterError(f"method deve ser um de {MOREAU_METHODS}.")


def _phi_subgradient(problem, u: np.ndarray, fallback: bool) -> Tuple[float, np.ndarray]:
    # subgradiente da dobradiça: ȳ_j onde c_j > 0, 0 caso contrário (inclusive c_j = 0)
    h, c = problem.evaluate_exact(u)
    grad_h, jac, _ = lagrangian_gradients(problem, u, fallback=fallback)
    if c.size == 0:
        return h, grad_h
    coef = np.where(c > 0, problem.y_upper, 0.0)
    return h + float(problem.y_upper @ np.maximum(c, 0.0)), grad_h + jac.T @ coef


def inner_residual(problem, u: np.ndarray, x: np.ndarray, L: float, box=None, fallback: bool = False) -> float:
    """
    dist(0, ∂[Φ(u) + L‖u − x‖²] + N_X(u)): nas restrições ativas (|c_j| <= ACTIVE_TOL)
    o coeficiente λ_j ∈ [0, ȳ_j] é escolhido por mínimos quadrados com limites.
    """
    _, c = problem.evaluate_exact(u)
    grad_h, jac, _ = lagrangian_gradients(problem, u, fallback=fallback)
    g = grad_h + 2.0 * L * (u - x)
    active = np.zeros(0, dtype=bool)
    if c.size:
        positive = c > ACTIVE_TOL
        active = np.abs(c) <= ACTIVE_TOL
        g = g + jac[positive].T @ problem.y_upper[positive]

    at_lower = np.zeros(u.size, dtype=bool)
    at_upper = np.zeros(u.size, dtype=bool)
    if box is not None:
        at_lower = u <= box[0] + ACTIVE_TOL
        at_upper = u >= box[1] - ACTIVE_TOL
    free = ~(at_lower | at_upper)

    r = g
    if active.any() and free.any():
        A = jac[active].T
        sol = lsq_linear(A[free], -g[free], bounds=(np.zeros(A.shape[1]), problem.y_upper[active]))
        r = g + A @ sol.x
    outward = np.concatenate([np.maximum(-r[at_lower], 0.0), np.maximum(r[at_upper], 0.0)])
    return float(np.sqrt(r[free] @ r[free] + outward @ outward))


def _subgradient(problem, x: np.ndarray, L: float, cfg: MoreauConfig, box) -> Tuple[np.ndarray, float]:
    """Gradiente projetado com backtracking; para quando o passo some (dobradiça) ou converge."""
    L_phi = float(cfg.lipschitz_phi) if cfg.lipschitz_phi is not None else L
    max_step = step = 1.0 / (2.0 * (L_phi + 2.0 * L))
    min_step = step * MIN_STEP_RATIO

    def inner(u):
        phi, g = _phi_subgradient(problem, u, cfg.fallback)
        du = u - x
        return phi + L * float(du @ du), g + 2.0 * L * du

    u = x.copy()
    stalled = 0
    try:
        value, grad = inner(u)
        for _ in range(int(cfg.max_iters)):
            while True:
                trial = u - step * grad
                if box is not None:
                    trial = project_box(trial, *box)
                move = trial - u
                trial_value, trial_grad = inner(trial)
                if trial_value <= value + float(grad @ move) + float(move @ move) / (2.0 * step):
                    break
                step *= 0.5
                if step < min_step:
                    return u, value
            stalled = stalled + 1 if value - trial_value <= 1e-16 * (1.0 + abs(value)) else 0
            u, value, grad = trial, trial_value, trial_grad
            if stalled >= STALL_ITERS:
                break
            if float(np.linalg.norm(move)) / step <= cfg.tol:
                break
            step = min(1.5 * step, max_step)
    except (OracleFailureError, InputDomainError):
        # saiu do domínio do oráculo: o SLSQP recomeça de x
        return x.copy(), np.inf
    return u, value


def _slsqp(problem, x: np.ndarray, L: float, u0: np.ndarray, cfg: MoreauConfig, box):
    """
    Forma epigráfica suave: min_{u,t} h(u) + ȳᵀt + L‖u − x‖²,
    t >= c(u), t >= 0.
    """
    d, m = problem.dim_x, problem.dim_y
    cache: Dict[bytes, tuple] = {}

    def parts(w: np.ndarray):
        key = w[:d].tobytes()
        if key not in cache:
            u = w[:d]
            h, c = problem.evaluate_exact(u)
            grad_h, jac, _ = lagrangian_gradients(problem, u, fallback=cfg.fallback)
            cache.clear()
            cache[key] = (h, c, grad_h, jac)
        return cache[key]

    def objective(w):
        h, _, _, _ = parts(w)
        du = w[:d] - x
        return h + float(problem.y_upper @ w[d:]) + L * float(du @ du)

    def objective_jac(w):
        _, _, grad_h, _ = parts(w)
        return np.concatenate([grad_h + 2.0 * L * (w[:d] - x), problem.y_upper])

    constraints = []
    if m:
        constraints.append(
            {
                "type": "ineq",
                "fun": lambda w: w[d:] - parts(w)[1],
                "jac": lambda w: np.hstack([-parts(w)[3], np.eye(m)]),
            }
        )
    u_bounds = list(zip(*box)) if box is not None else [(None, None)] * d
    bounds = u_bounds + [(0.0, None)] * m
    _, c0 = problem.evaluate_exact(u0)
    w0 = np.concatenate([u0, np.maximum(c0, 0.0)])
    res = minimize(
        objective,
        w0,
        jac=objective_jac,
        bounds=bounds,
        constraints=constraints,
        method="SLSQP",
        options={"maxiter": 1000, "ftol": SLSQP_FTOL},
    )
    return res.x[:d].copy(), str(res.message)


def _envelope_value(problem, u: np.ndarray, x: np.ndarray, L: float) -> float:
    h, c = problem.evaluate_exact(u)
    du = u - x
    return h + float(problem.y_upper @ np.maximum(c, 0.0)) + L * float(du @ du)


def moreau_envelope(problem, x: np.ndarray, L: float, cfg: MoreauConfig = MoreauConfig()) -> Tuple[float, np.ndarray]:
    """
    Φ_{1/2L}(x) = min_u Φ(u) + L‖u − x‖² e o minimizador x̂.
    O objetivo interno é fortemente convexo em u dado x.
    """
    if not L > 0:
        raise InvalidParameterError("L deve ser > 0.")
    x = np.asarray(x, dtype=float)
    box = problem.x_box if cfg.project_x else None

    accept_tol = cfg.accept_tol if problem.has_true_grads else max(cfg.accept_tol, FALLBACK_ACCEPT_TOL)
    u, residual = x.copy(), np.inf
    if cfg.method in ("auto", "subgradient"):
        u, _ = _subgradient(problem, x, L, cfg, box)
        residual = inner_residual(problem, u, x, L, box, cfg.fallback)
        if residual <= accept_tol:
            return _envelope_value(problem, u, x, L), u
        if cfg.method == "subgradient":
            raise MoreauConvergenceError(
                f"subgradiente não convergiu em {cfg.max_iters} iterações (resíduo {residual:.3g}).", residual
            )
        logger.debug("subgradiente parou com resíduo %.3g; tentando SLSQP", residual)

    u, message = _slsqp(problem, x, L, u, cfg, box)
    # o status do SLSQP não basta: vale o resíduo de otimalidade no ponto devolvido
    residual = inner_residual(problem, u, x, L, box, cfg.fallback)
    if residual > accept_tol:
        raise MoreauConvergenceError(f"solver interno do envelope falhou ({message}); resíduo {residual:.3g}.", residual)
    return _envelope_value(problem, u, x, L), u


def moreau_gradient(problem, x: np.ndarray, L: float, inner_cfg: MoreauConfig = MoreauConfig()) -> float:
    """‖∇Φ_{1/2L}(x)‖ = 2L‖x − x̂‖."""
    _, x_hat = moreau_envelope(problem, x, L, inner_cfg)
    return 2.0 * float(L) * float(np.linalg.norm(np.asarray(x, dtype=float) - x_hat))
