# -*- coding: utf-8 -*-
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import InvalidRadiusError

logger = logging.getLogger(__name__)

RADIUS_SAFETY = 0.99

# r_k = min(r0/(k+1)^e, cap); constantes dos experimentos de referência
NOISE_FREE_PRESET = {"r0": 1e-1, "decay_exponent": 1.2, "cap": 2e-4}
NOISY_PRESET = {"r0": 400.0, "decay_exponent": 1.2, "cap": 4e-3}


@dataclass(frozen=True)
class RadiusSchedule:
    """
    Raios de suavização r_k = min(r0/(k+1)^decay_exponent, cap).

    Na construção exige Σ_{k=0}^{horizon} r_k² <= 1/b.
    """

    r0: float
    decay_exponent: float
    cap: float
    block_size: int
    horizon: int

    def __post_init__(self):
        if not (self.r0 > 0 and self.cap > 0 and np.isfinite(self.r0) and np.isfinite(self.cap)):
            raise InvalidRadiusError("r0 e cap devem ser finitos e > 0.")
        if self.decay_exponent < 0:
            raise InvalidRadiusError("decay_exponent deve ser >= 0.")
        if int(self.block_size) < 1:
            raise InvalidRadiusError("block_size deve ser >= 1.")
        if int(self.horizon) < 0:
            raise InvalidRadiusError("horizon deve ser >= 0.")
        total = self.sum_squares(self.horizon)
        bound = 1.0 / self.block_size
        if total > bound:
            raise InvalidRadiusError(
                f"condição Σ_(k<=K) r_k² <= 1/b violada: soma {total:.6g} > {bound:.6g} "
                f"(K={self.horizon}, b={self.block_size})."
            )

    def radius(self, k: int) -> float:
        return float(min(self.r0 / (int(k) + 1) ** self.decay_exponent, self.cap))

    def radii(self, K: int) -> np.ndarray:
        ks = np.arange(int(K) + 1, dtype=float)
        return np.minimum(self.r0 / (ks + 1.0) ** self.decay_exponent, self.cap)

    def sum_squares(self, K: int) -> float:
        r = self.radii(K)
        return float(r @ r)

    @classmethod
    def auto(
        cls,
        r0: float = NOISE_FREE_PRESET["r0"],
        decay_exponent: float = NOISE_FREE_PRESET["decay_exponent"],
        cap: float = NOISE_FREE_PRESET["cap"],
        block_size: int = 1,
        horizon: int = 0,
        safety: float = RADIUS_SAFETY,
    ) -> "RadiusSchedule":
        """Reescala r0 e cap pelo mesmo fator até Σ r_k² <= safety/b."""
        probe = np.minimum(r0 / (np.arange(horizon + 1, dtype=float) + 1.0) ** decay_exponent, cap)
        total = float(probe @ probe)
        target = safety / int(block_size)
        if total > target:
            scale = float(np.sqrt(target / total))
            logger.debug("raios reescalados por %.4g (soma %.4g > %.4g)", scale, total, target)
            r0, cap = r0 * scale, cap * scale
        return cls(r0=r0, decay_exponent=decay_exponent, cap=cap, block_size=int(block_size), horizon=int(horizon))

    @classmethod
    def constant(cls, r: float, block_size: int = 1, horizon: int = 0) -> "RadiusSchedule":
        return cls(r0=r, decay_exponent=0.0, cap=r, block_size=int(block_size), horizon=int(horizon))
