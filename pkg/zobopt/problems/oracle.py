# -*- coding: utf-8 -*-
from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    InputDomainError,
    InvalidDimensionError,
    InvalidSpecError,
    OracleFailureError,
    UnsupportedMetricError,
)

if TYPE_CHECKING:
    from .noise import NoiseSpec

Evaluator = Callable[[np.ndarray], Tuple[float, np.ndarray]]
GradientOracle = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]
Box = Tuple[np.ndarray, np.ndarray]


@dataclass
class QueryCounter:
    """
    Contador de consultas simultâneas (h e todas as c_j numa chamada).
    `close_iteration` fecha a iteração corrente e registra quantas
    consultas ela usou; ao fim de uma execução total == sum(log).
    """

    total: int = 0
    per_iteration_log: List[int] = field(default_factory=list)
    _mark: int = 0

    def tick(self, n: int = 1) -> None:
        if n < 0:
            raise ValueError("o contador de consultas é monótono.")
        self.total += int(n)

    def close_iteration(self) -> int:
        used = self.total - self._mark
        self.per_iteration_log.append(used)
        self._mark = self.total
        return used

    def reset(self) -> None:
        self.total = 0
        self.per_iteration_log = []
        self._mark = 0


@dataclass(frozen=True)
class ReferencePoint:
    """Solução conhecida de um problema de teste (x*, y*, h*)."""

    x: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    h_star: Optional[float] = None


class OracleProblem:
    """
    Caixa-preta de ordem zero: `evaluate(x)` devolve (h(x), c(x)) numa
    única consulta.

    Os gradientes verdadeiros (quando existem) ficam num slot privado e só
    são lidos por `true_gradients`, usado exclusivamente pelas métricas.
    """

    def __init__(
        self,
        dim_x: int,
        y_upper: Sequence[float],
        evaluator: Evaluator,
        true_grads: Optional[GradientOracle] = None,
        x_box: Optional[Box] = None,
        reference: Optional[ReferencePoint] = None,
        name: str = "custom",
        noise: Optional["NoiseSpec"] = None,
    ):
        if int(dim_x) < 1:
            raise InvalidDimensionError(f"dim_x deve ser >= 1 (recebido {dim_x}).")
        y_upper = np.atleast_1d(np.asarray(y_upper, dtype=float)).reshape(-1)
        if not np.all(np.isfinite(y_upper)) or np.any(y_upper <= 0):
            raise InvalidSpecError("y_upper precisa ser finito e estritamente positivo.")

        self.dim_x = int(dim_x)
        self.dim_y = int(y_upper.size)
        self.y_upper = y_upper
        self.x_box = _check_box(x_box, self.dim_x)
        self.reference = reference
        self.name = name
        self.noise = noise

        self._evaluator = evaluator
        self._true_grads = true_grads
        self.counter = QueryCounter()
        self.metrics_counter = QueryCounter()
        self._noise_rng = self._fresh_noise_rng()

    # ---------- consultas ----------
    def evaluate(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        """Consulta do orçamento do solver; com ruído se houver NoiseSpec."""
        h, c = self._observe(x, self.counter)
        if self.noise is None or not self.noise.active:
            return h, c
        draw = self._noise_rng.standard_normal(1 + self.dim_y) * self.noise.std_vector(self.dim_y)
        return h + float(draw[0]), c + draw[1:]

    def evaluate_exact(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        """Consulta do orçamento de métricas; sempre sem ruído."""
        return self._observe(x, self.metrics_counter)

    def _observe(self, x: np.ndarray, counter: QueryCounter) -> Tuple[float, np.ndarray]:
        x = self._check_point(x)
        h, c = self._evaluator(x)
        counter.tick()
        h = float(h)
        c = np.atleast_1d(np.asarray(c, dtype=float)).reshape(-1).copy()
        if c.size != self.dim_y:
            raise OracleFailureError(
                f"o oráculo devolveu {c.size} restrições, esperado {self.dim_y}.", x
            )
        if not np.isfinite(h) or not np.all(np.isfinite(c)):
            raise OracleFailureError("o oráculo devolveu valores não finitos.", x)
        return h, c

    def _check_point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim_x,):
            raise InputDomainError(f"x deve ter forma ({self.dim_x},), recebido {x.shape}.")
        if not np.all(np.isfinite(x)):
            raise InputDomainError("x contém entradas não finitas.")
        return x

    # ---------- utilidades ----------
    @property
    def has_true_grads(self) -> bool:
        return self._true_grads is not None

    def metrics_view(self) -> "MetricsView":
        return MetricsView(self)

    def clone(self) -> "OracleProblem":
        """Mesma função, contadores zerados e fluxo de ruído reiniciado."""
        return OracleProblem(
            dim_x=self.dim_x,
            y_upper=self.y_upper.copy(),
            evaluator=self._evaluator,
            true_grads=self._true_grads,
            x_box=self.x_box,
            reference=self.reference,
            name=self.name,
            noise=self.noise,
        )

    def _fresh_noise_rng(self) -> Optional[np.random.Generator]:
        if self.noise is None:
            return None
        return np.random.default_rng(self.noise.rng_seed)

    def __repr__(self) -> str:
        return f"OracleProblem(name={self.name!r}, dim_x={self.dim_x}, dim_y={self.dim_y})"


class MetricsView:
    """
    Expõe `evaluate_exact` sob o nome `evaluate`, para reaproveitar os
    estimadores no orçamento de métricas.
    """

    def __init__(self, problem: OracleProblem):
        self.problem = problem
        self.dim_x = problem.dim_x
        self.dim_y = problem.dim_y
        self.y_upper = problem.y_upper
        self.x_box = problem.x_box

    def evaluate(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        return self.problem.evaluate_exact(x)


def evaluate(problem: OracleProblem, x: np.ndarray) -> Tuple[float, np.ndarray]:
    return problem.evaluate(x)


def true_gradients(problem: OracleProblem, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gradientes analíticos (∇h(x), Jacobiana de c em x), só para métricas.
    Jacobiana com forma (dim_y, dim_x).
    """
    if problem._true_grads is None:
        raise UnsupportedMetricError(f"{problem.name}: gradientes verdadeiros indisponíveis.")
    x = problem._check_point(x)
    grad_h, jac = problem._true_grads(x)
    grad_h = np.asarray(grad_h, dtype=float).reshape(problem.dim_x)
    jac = np.asarray(jac, dtype=float).reshape(problem.dim_y, problem.dim_x)
    return grad_h, jac


def _check_box(x_box: Optional[Box], dim_x: int) -> Optional[Box]:
    if x_box is None:
        return None
    lower, upper = (np.broadcast_to(np.asarray(v, dtype=float), (dim_x,)).copy() for v in x_box)
    if not np.all(lower < upper):
        raise InvalidSpecError("x_box exige lower < upper em todas as coordenadas.")
    return lower, upper


# ===========================
# Construtor genérico
# ===========================
def make_problem(
    objective: Callable[[np.ndarray], float],
    constraints: Optional[Callable[[np.ndarray], np.ndarray]],
    dim_x: int,
    y_upper: Sequence[float],
    x_box: Optional[Box] = None,
    true_grads: Optional[GradientOracle] = None,
    equalities: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    equality_grads: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    name: str = "custom",
) -> OracleProblem:
    """
    Monta um OracleProblem a partir de funções simples.

    Restrições de igualdade e(x) = 0 entram como o par e(x) <= 0 e
    -e(x) <= 0, ao fim do vetor c; `y_upper` deve cobrir o vetor expandido.
    `true_grads` devolve (∇h, J_c) das desigualdades; `equality_grads`
    devolve J_e.
    """

    def evaluator(x: np.ndarray) -> Tuple[float, np.ndarray]:
        parts = [np.atleast_1d(np.asarray(constraints(x), dtype=float))] if constraints else []
        if equalities is not None:
            e = np.atleast_1d(np.asarray(equalities(x), dtype=float))
            parts += [e, -e]
        c = np.concatenate(parts) if parts else np.zeros(0)
        return float(objective(x)), c

    grads = true_grads
    if true_grads is not None and equalities is not None:
        if equality_grads is None:
            raise InvalidSpecError("equality_grads é obrigatório com true_grads e igualdades.")

        def grads(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            g, jac = true_grads(x)
            jac = np.asarray(jac, dtype=float).reshape(-1, dim_x)
            je = np.asarray(equality_grads(x), dtype=float).reshape(-1, dim_x)
            return g, np.vstack([jac, je, -je])

    return OracleProblem(
        dim_x=dim_x,
        y_upper=y_upper,
        evaluator=evaluator,
        true_grads=grads,
        x_box=x_box,
        name=name,
    )
