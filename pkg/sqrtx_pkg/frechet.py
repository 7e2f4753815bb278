import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from .config import MAX_ORDER
from .errors import DimensionMismatch, OrderTooLarge
from .linalg import EigenDecomposition, SpdMatrix, SymMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CatalanTable:
    values: Tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]


@dataclass(frozen=True, eq=False)
class DerivativeStack:
    """s_k = (1/k!)·∇^kφ(A)·H^{⊗k} for k = 1..order (index 0 of scaled_terms is s_1)."""

    base: SpdMatrix
    direction: SymMatrix
    order: int
    scaled_terms: Tuple[SymMatrix, ...]

    def term(self, k: int) -> SymMatrix:
        if not 1 <= k <= self.order:
            raise IndexError(f"stack holds orders 1..{self.order}, asked for {k}")
        return self.scaled_terms[k - 1]

    def derivative(self, k: int) -> SymMatrix:
        """∇^kφ(A)·H^{⊗k} = k!·s_k."""
        return self.term(k) * math.factorial(k)

    def partial_sum(self, m: int) -> SymMatrix:
        total = SymMatrix.zeros(self.direction.dim)
        for k in range(1, m + 1):
            total = total + self.term(k)
        return total


def check_order(n: int, minimum: int = 0):
    if n < minimum:
        raise OrderTooLarge(f"order must be >= {minimum}, got {n}")
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds the cap of {MAX_ORDER}")


def principal_sqrt(a: SpdMatrix) -> SpdMatrix:
    eig = a.eigen
    root = np.sqrt(eig.eigenvalues)
    s = eig.apply(np.sqrt)
    return SpdMatrix(base=s, lambda_min=float(root[0]), eigen=EigenDecomposition(eig.basis, root))


def sylvester_sqrt_solve(s: SpdMatrix, h: SymMatrix) -> SymMatrix:
    """Solve S·X + X·S = H in the eigenbasis of S."""
    if s.dim != h.dim:
        raise DimensionMismatch(f"dimension mismatch: S is {s.dim}x{s.dim}, H is {h.dim}x{h.dim}")
    u, d = s.eigen.basis, s.eigen.eigenvalues
    g = u.T @ h.entries @ u
    x = g / (d[:, None] + d[None, :])
    return SymMatrix(u @ x @ u.T)


def sylvester_residual(s: SpdMatrix, x: SymMatrix, h: SymMatrix) -> float:
    return float(np.linalg.norm(s.entries @ x.entries + x.entries @ s.entries - h.entries, "fro"))


def frechet_first(a: SpdMatrix, h: SymMatrix) -> SymMatrix:
    return sylvester_sqrt_solve(principal_sqrt(a), h)


def _stack_from_root(a: SpdMatrix, root: SpdMatrix, h: SymMatrix, n: int) -> DerivativeStack:
    terms = [sylvester_sqrt_solve(root, h)]
    for m in range(2, n + 1):
        bracket = np.zeros((h.dim, h.dim))
        for p in range(1, m):
            bracket += terms[p - 1] @ terms[m - p - 1]
        terms.append(-sylvester_sqrt_solve(root, SymMatrix(bracket)))
    return DerivativeStack(base=a, direction=h, order=n, scaled_terms=tuple(terms))


def derivative_stack(a: SpdMatrix, h: SymMatrix, n: int) -> DerivativeStack:
    """Scaled recursion s_n = -∇φ(A)·[Σ_{p+q=n-2} s_{p+1}·s_{q+1}], symmetrized before each solve."""
    check_order(n, minimum=1)
    if a.dim != h.dim:
        raise DimensionMismatch(f"dimension mismatch: A is {a.dim}x{a.dim}, H is {h.dim}x{h.dim}")
    log.debug("derivative stack r=%d order=%d", a.dim, n)
    return _stack_from_root(a, principal_sqrt(a), h, n)


def _second_along(root: SpdMatrix, h: SymMatrix) -> SymMatrix:
    s1 = sylvester_sqrt_solve(root, h)
    return sylvester_sqrt_solve(root, SymMatrix(s1 @ s1)) * -2.0


def frechet_second_bidirectional(a: SpdMatrix, h1: SymMatrix, h2: SymMatrix) -> SymMatrix:
    """∇²φ(A)·(H1, H2) by polarization of the diagonal ∇²φ(A)·H^{⊗2} = -2∇φ(A)·[∇φ(A)·H]²."""
    root = principal_sqrt(a)
    return (_second_along(root, h1 + h2) - _second_along(root, h1 - h2)) * 0.25


@lru_cache(maxsize=None)
def catalan_table(n: int) -> CatalanTable:
    check_order(n)
    values = [1]
    for k in range(n):
        values.append(sum(values[p] * values[k - p] for p in range(k + 1)))
    for k, c in enumerate(values):
        closed = math.comb(2 * k, k) // (k + 1)
        if c != closed:
            raise ArithmeticError(f"Catalan recursion C_{k}={c} disagrees with closed form {closed}")
    return CatalanTable(tuple(values))


def catalan(n: int) -> int:
    check_order(n)
    return math.comb(2 * n, n) // (n + 1)


def derivative_norm_bound(n: int, lambda_min: float, k_const: float) -> float:
    """Bound on the operator norm of ∇^{n+1}φ(A)."""
    if n < 0:
        raise OrderTooLarge(f"order must be >= 0, got {n}")
    if not lambda_min > 0:
        raise ValueError(f"lambda_min must be positive, got {lambda_min}")
    return (
        k_const ** n
        * math.factorial(n + 1)
        * catalan(n)
        * 2.0 ** (-(2 * n + 1))
        * lambda_min ** (-(n + 0.5))
    )


def scaled_term_bound(k: int, lambda_min: float, k_const: float, norm_h: float) -> float:
    """Bound on ‖s_k‖; equals derivative_norm_bound(k-1)·‖H‖^k / k!."""
    if k < 1:
        raise OrderTooLarge(f"order must be >= 1, got {k}")
    if not lambda_min > 0:
        raise ValueError(f"lambda_min must be positive, got {lambda_min}")
    return (
        k_const ** (k - 1)
        * catalan(k - 1)
        * 2.0 ** (-(2 * k - 1))
        * lambda_min ** (-(k - 0.5))
        * norm_h ** k
    )
