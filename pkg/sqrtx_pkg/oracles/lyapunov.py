import math
from typing import Optional

import numpy as np

from ..config import LYAPUNOV_QUADRATURE, QuadratureSpec
from ..frechet import principal_sqrt
from ..linalg import SpdMatrix, SymMatrix
from .base import FrechetOracle
from .quadrature import expm_sym, gauss_legendre_panels


def lyapunov_quadrature(a: SpdMatrix, h: SymMatrix, q: Optional[QuadratureSpec] = None) -> SymMatrix:
    """∫₀^T e^{-tφ(A)} H e^{-tφ(A)} dt with T = horizon / λ_min(A)^{1/2}.

    The neglected tail is at most e^{-2·horizon}·‖H‖ / (2λ_min(A)^{1/2}).
    """
    q = q or LYAPUNOV_QUADRATURE
    root = principal_sqrt(a)
    d = root.eigen.eigenvalues
    end = q.horizon / math.sqrt(a.lambda_min)
    nodes, weights = gauss_legendre_panels(1.0 / (2.0 * d[-1]), end, q)
    total = np.zeros((a.dim, a.dim))
    for t, w in zip(nodes, weights):
        e = expm_sym(root.base * -t).entries
        total += w * (e @ h.entries @ e)
    return SymMatrix(total)


class LyapunovOracle(FrechetOracle):
    name = "lyapunov"

    def __init__(self, spec: Optional[QuadratureSpec] = None):
        self.spec = spec or LYAPUNOV_QUADRATURE

    def frechet(self, a: SpdMatrix, h: SymMatrix) -> SymMatrix:
        return lyapunov_quadrature(a, h, self.spec)
