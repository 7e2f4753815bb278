from typing import Optional

import numpy as np

from ..config import REMAINDER_QUADRATURE, QuadratureSpec
from ..errors import GateFailed
from ..frechet import check_order, derivative_stack
from ..linalg import SpdMatrix, SymMatrix, assert_spd
from ..taylor import GateVerdict, gate
from .quadrature import gauss_legendre_panels


def remainder_integral(a: SpdMatrix, h: SymMatrix, n: int, q: Optional[QuadratureSpec] = None) -> SymMatrix:
    """(1/n!) ∫₀¹ (1−ε)ⁿ ∇^{n+1}φ(A+εH)·H dε = (n+1) ∫₀¹ (1−ε)ⁿ s_{n+1}(A+εH) dε."""
    check_order(n)
    q = q or REMAINDER_QUADRATURE
    g = gate(a.base, h)
    if g.verdict is not GateVerdict.STRICT:
        raise GateFailed(g)
    # uniform panels on [0, 1]
    nodes, weights = gauss_legendre_panels(1.0 / q.panels, 1.0, q)
    total = np.zeros((a.dim, a.dim))
    for eps, w in zip(nodes, weights):
        point = assert_spd(a.base + h * eps)
        s = derivative_stack(point, h, n + 1).term(n + 1)
        total += (w * (n + 1) * (1.0 - eps) ** n) * s.entries
    return SymMatrix(total)
