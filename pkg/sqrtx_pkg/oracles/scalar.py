import math

from ..errors import OrderTooLarge


def half_binomial(k: int) -> float:
    """binom(1/2, k)."""
    coef = 1.0
    for i in range(k):
        coef *= (0.5 - i) / (i + 1)
    return coef


def scalar_closed_form(a: float, h: float, k: int) -> float:
    """k-th Taylor coefficient of √(a+h) in h: binom(1/2, k)·a^{1/2−k}·h^k."""
    if not a > 0:
        raise ValueError(f"scalar base must be positive, got {a}")
    if k < 0:
        raise OrderTooLarge(f"order must be >= 0, got {k}")
    if k == 0:
        return math.sqrt(a)
    return half_binomial(k) * a ** (0.5 - k) * h ** k
