import math
from typing import Optional, Sequence

import numpy as np

from ..errors import GateFailed, OrderTooLarge
from ..frechet import derivative_stack, principal_sqrt
from ..linalg import EPS, NormKind, SpdMatrix, SymMatrix, assert_spd, norm
from ..taylor import GateVerdict, gate
from .base import FrechetOracle


def default_step(a: SpdMatrix, h: SymMatrix, k: int) -> float:
    return EPS ** (1.0 / (k + 2)) * a.lambda_min / max(1.0, norm(h, NormKind.SPECTRAL))


def finite_difference(a: SpdMatrix, h: SymMatrix, k: int, eps: Optional[float] = None) -> SymMatrix:
    """Central k-th difference of ε ↦ φ(A+εH) at 0; estimates ∇^kφ(A)·H^{⊗k} to O(eps²)."""
    if k < 1:
        raise OrderTooLarge(f"difference order must be >= 1, got {k}")
    if eps is None:
        eps = default_step(a, h, k)
    if not eps > 0:
        raise ValueError(f"difference step must be positive, got {eps}")
    for sign in (1.0, -1.0):
        g = gate(a.base, h * (sign * k * eps))
        if g.verdict is not GateVerdict.STRICT:
            raise GateFailed(g, f"difference step {eps:.3e} leaves the SPD cone: {g}")

    total = np.zeros((a.dim, a.dim))
    for j in range(k + 1):
        point = assert_spd(a.base + h * ((k / 2.0 - j) * eps))
        total += (-1) ** j * math.comb(k, j) * principal_sqrt(point).entries
    return SymMatrix(total / eps ** k)


def difference_convergence_slope(a: SpdMatrix, h: SymMatrix, k: int, steps: Sequence[float]) -> float:
    """Least-squares slope of log‖difference − k!·s_k‖_F against log eps."""
    exact = derivative_stack(a, h, k).derivative(k)
    errors = [norm(finite_difference(a, h, k, eps) - exact, NormKind.FROBENIUS) for eps in steps]
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


class FiniteDifferenceOracle(FrechetOracle):
    name = "finite_difference"

    def __init__(self, eps: Optional[float] = None):
        self.eps = eps

    def frechet(self, a: SpdMatrix, h: SymMatrix) -> SymMatrix:
        return finite_difference(a, h, 1, self.eps)
