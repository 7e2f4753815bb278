"""Resolvent integrals for φ(A) and ∇φ(A)·H after the substitution t = u².

    φ(A)       = (2/π) ∫₀^∞ A (u²I + A)⁻¹ du
    ∇φ(A)·H    = (2/π) ∫₀^∞ (u²I + A)⁻¹ H (u²I + A)⁻¹ u² du

Both are integrated on [0, U] with U = horizon·‖A‖₂^{1/2}; the tails beyond U are
added from their expansions in powers of A/U².
"""

import math
from typing import List, Optional

import numpy as np

from ..config import RESOLVENT_QUADRATURE, QuadratureSpec
from ..linalg import NormKind, SpdMatrix, SymMatrix, norm
from .base import FrechetOracle
from .quadrature import gauss_legendre_panels

TAIL_TERMS = 4


def _layout(a: SpdMatrix, q: QuadratureSpec):
    end = q.horizon * math.sqrt(norm(a.base, NormKind.SPECTRAL))
    nodes, weights = gauss_legendre_panels(math.sqrt(a.lambda_min) / 2.0, end, q)
    return end, nodes, weights


def _powers(a: np.ndarray, count: int) -> List[np.ndarray]:
    out = [np.eye(a.shape[0])]
    for _ in range(count):
        out.append(out[-1] @ a)
    return out


def resolvent_sqrt(a: SpdMatrix, q: Optional[QuadratureSpec] = None) -> SymMatrix:
    q = q or RESOLVENT_QUADRATURE
    end, nodes, weights = _layout(a, q)
    eye = np.eye(a.dim)
    total = np.zeros((a.dim, a.dim))
    for u, w in zip(nodes, weights):
        total += w * np.linalg.solve(u * u * eye + a.entries, a.entries)

    powers = _powers(a.entries, TAIL_TERMS + 1)
    tail = sum((-1) ** m * powers[m + 1] / ((2 * m + 1) * end ** (2 * m + 1)) for m in range(TAIL_TERMS))
    return SymMatrix((2.0 / math.pi) * (total + tail))


def resolvent_frechet(a: SpdMatrix, h: SymMatrix, q: Optional[QuadratureSpec] = None) -> SymMatrix:
    q = q or RESOLVENT_QUADRATURE
    end, nodes, weights = _layout(a, q)
    eye = np.eye(a.dim)
    total = np.zeros((a.dim, a.dim))
    for u, w in zip(nodes, weights):
        r = np.linalg.solve(u * u * eye + a.entries, eye)
        total += (w * u * u) * (r @ h.entries @ r)

    powers = _powers(a.entries, TAIL_TERMS)
    tail = np.zeros((a.dim, a.dim))
    for m in range(TAIL_TERMS):
        inner = sum(powers[j] @ h.entries @ powers[m - j] for j in range(m + 1))
        tail += (-1) ** m * inner / ((2 * m + 1) * end ** (2 * m + 1))
    return SymMatrix((2.0 / math.pi) * (total + tail))


class ResolventOracle(FrechetOracle):
    name = "resolvent"

    def __init__(self, spec: Optional[QuadratureSpec] = None):
        self.spec = spec or RESOLVENT_QUADRATURE

    def frechet(self, a: SpdMatrix, h: SymMatrix) -> SymMatrix:
        return resolvent_frechet(a, h, self.spec)
