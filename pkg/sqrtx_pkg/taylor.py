"""Taylor partial sums of √(A+H), remainder bounds, validity gates and reports."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .config import BOUND_SLACK
from .errors import DimensionMismatch, GateFailed
from .frechet import (
    check_order,
    catalan,
    derivative_stack,
    principal_sqrt,
    sylvester_residual,
    sylvester_sqrt_solve,
)
from .linalg import NormKind, SpdMatrix, SymMatrix, assert_spd, is_spd, lambda_min, norm

log = logging.getLogger(__name__)


class GateVerdict(str, Enum):
    STRICT = "strict"
    WEYL = "weyl"
    FAILED = "failed"


@dataclass(frozen=True)
class PerturbationGate:
    lambda_min_A: float
    lambda_min_B: float
    spectral_norm_H: float
    verdict: GateVerdict

    @property
    def weyl_lower_bound(self) -> float:
        return self.lambda_min_A - self.spectral_norm_H


@dataclass(frozen=True, eq=False)
class TaylorReport:
    dim: int
    order: int
    norm_kind: NormKind
    gate: PerturbationGate
    norm_H: float
    approx: Optional[SymMatrix] = None
    truth: Optional[SymMatrix] = None
    actual_error: Optional[float] = None
    remainder_bound: Optional[float] = None
    bound_satisfied: bool = False
    ando_hemmen_bound: Optional[float] = None
    sylvester_residual: Optional[float] = None
    remainder_bounds: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "dim": self.dim,
            "order": self.order,
            "norm": self.norm_kind.value,
            "lambda_min_A": self.gate.lambda_min_A,
            "norm_H": self.norm_H,
            "actual_error": self.actual_error,
            "remainder_bound": self.remainder_bound,
            "bound_satisfied": self.bound_satisfied,
            "gate": self.gate.verdict.value,
            "ando_hemmen_bound": self.ando_hemmen_bound,
            "sylvester_residual": self.sylvester_residual,
        }
        if self.remainder_bounds:
            out["remainder_bounds"] = dict(self.remainder_bounds)
        return out


def _gate_with_sum(a: SymMatrix, h: SymMatrix) -> Tuple[PerturbationGate, SymMatrix]:
    if a.dim != h.dim:
        raise DimensionMismatch(f"dimension mismatch: A is {a.dim}x{a.dim}, H is {h.dim}x{h.dim}")
    b = a + h
    lam_a, lam_b = lambda_min(a), lambda_min(b)
    norm_h = norm(h, NormKind.SPECTRAL)
    a_ok = is_spd(a)
    if a_ok and is_spd(b):
        verdict = GateVerdict.STRICT
    elif a_ok and lam_a > norm_h:
        verdict = GateVerdict.WEYL
    else:
        verdict = GateVerdict.FAILED
    return PerturbationGate(lam_a, lam_b, norm_h, verdict), b


def gate(a: SymMatrix, h: SymMatrix) -> PerturbationGate:
    return _gate_with_sum(a, h)[0]


def _require_gate(a: SymMatrix, h: SymMatrix) -> PerturbationGate:
    g = gate(a, h)
    if g.verdict is GateVerdict.FAILED:
        raise GateFailed(g)
    return g


def _partial_sum(a: SpdMatrix, h: SymMatrix, n: int) -> SymMatrix:
    root = principal_sqrt(a).base
    if n == 0:
        return root
    return root + derivative_stack(a, h, n).partial_sum(n)


def _bound(a: SpdMatrix, h: SymMatrix, n: int, kind: NormKind) -> float:
    k_const = kind.constant(a.dim)
    return (
        k_const ** n
        * (n + 1)
        * catalan(n)
        * 2.0 ** (-2 * n)
        * a.lambda_min ** (-(n + 0.5))
        * norm(h, kind) ** (n + 1)
    )


def taylor_sum(a: SpdMatrix, h: SymMatrix, n: int) -> SymMatrix:
    """φ(A) + Σ_{k≤n} s_k."""
    check_order(n)
    _require_gate(a.base, h)
    return _partial_sum(a, h, n)


def remainder_bound(a: SpdMatrix, h: SymMatrix, n: int, kind: NormKind = NormKind.SPECTRAL) -> float:
    check_order(n)
    _require_gate(a.base, h)
    return _bound(a, h, n, NormKind(kind))


def ando_hemmen_bound(a: SpdMatrix, b: SpdMatrix, kind: NormKind = NormKind.SPECTRAL) -> float:
    return norm(a.base - b.base, kind) / (math.sqrt(a.lambda_min) + math.sqrt(b.lambda_min))


def check_ando_hemmen(a: SpdMatrix, b: SpdMatrix, kind: NormKind = NormKind.SPECTRAL) -> Tuple[float, float, bool]:
    actual = norm(principal_sqrt(a).base - principal_sqrt(b).base, kind)
    bound = ando_hemmen_bound(a, b, kind)
    return actual, bound, actual <= bound * (1 + BOUND_SLACK)


def report(
    a: SymMatrix,
    h: SymMatrix,
    n: int,
    kind: NormKind = NormKind.SPECTRAL,
    all_norms: bool = False,
) -> TaylorReport:
    check_order(n)
    kind = NormKind(kind)
    g, b = _gate_with_sum(a, h)
    norm_h = norm(h, kind)
    if g.verdict is not GateVerdict.STRICT:
        log.info("gate %s for r=%d (lambda_min_A=%.3e, lambda_min_B=%.3e)", g.verdict.value, a.dim, g.lambda_min_A, g.lambda_min_B)
        return TaylorReport(dim=a.dim, order=n, norm_kind=kind, gate=g, norm_H=norm_h)

    a_spd, b_spd = assert_spd(a), assert_spd(b)
    root = principal_sqrt(a_spd)
    approx = _partial_sum(a_spd, h, n)
    truth = principal_sqrt(b_spd).base
    actual = norm(truth - approx, kind)
    bound = _bound(a_spd, h, n, kind)
    s1 = sylvester_sqrt_solve(root, h)
    norm_h_fro = norm(h, NormKind.FROBENIUS)
    residual = sylvester_residual(root, s1, h) / norm_h_fro if norm_h_fro > 0 else 0.0
    bounds = {k.value: _bound(a_spd, h, n, k) for k in NormKind} if all_norms else {}
    return TaylorReport(
        dim=a.dim,
        order=n,
        norm_kind=kind,
        gate=g,
        norm_H=norm_h,
        approx=approx,
        truth=truth,
        actual_error=actual,
        remainder_bound=bound,
        bound_satisfied=actual <= bound * (1 + BOUND_SLACK),
        ando_hemmen_bound=ando_hemmen_bound(a_spd, b_spd, kind),
        sylvester_residual=residual,
        remainder_bounds=bounds,
    )


def first_order_remainder(a: SpdMatrix, b: SpdMatrix) -> SymMatrix:
    """φ(B) − φ(A) − ∇φ(A)·(B−A), evaluated as −∇φ(A)·(φ(B)−φ(A))²."""
    root = principal_sqrt(a)
    diff = principal_sqrt(b).base - root.base
    return -sylvester_sqrt_solve(root, SymMatrix(diff @ diff))


def quadratic_identity_residual(a: SpdMatrix, b: SpdMatrix) -> float:
    root = principal_sqrt(a)
    diff = principal_sqrt(b).base - root.base
    rhs = sylvester_sqrt_solve(root, b.base - a.base) - sylvester_sqrt_solve(root, SymMatrix(diff @ diff))
    return norm(diff - rhs, NormKind.FROBENIUS)


def second_order_check(a: SpdMatrix, b: SpdMatrix) -> Tuple[float, float]:
    """(lhs, rhs) of ‖φ(B)−φ(A)−∇φ(A)·H+∇φ(A)·[∇φ(A)·H]²‖₂ ≤ 3/8·λ_min(A)^{-5/2}·‖H‖₂³."""
    root = principal_sqrt(a)
    h = b.base - a.base
    s1 = sylvester_sqrt_solve(root, h)
    second = sylvester_sqrt_solve(root, SymMatrix(s1 @ s1))
    lhs = norm(principal_sqrt(b).base - root.base - s1 + second, NormKind.SPECTRAL)
    rhs = 0.375 * a.lambda_min ** -2.5 * norm(h, NormKind.SPECTRAL) ** 3
    return lhs, rhs


def error_recurrence(a: SpdMatrix, h: SymMatrix, n: int) -> SymMatrix:
    """Δ_{n+1} = φ(A+H) − φ(A) − T_{n+1} predicted from Δ_n.

    Uses D = φ(A+H) − φ(A), Δ_n = D − T_n and
    Δ_{n+1} = −∇φ(A)·[Σ_{m=n+2}^{2n} Σ_{p+q=m, p,q≤n} s_p s_q + DΔ_n + Δ_n D − Δ_n²].
    """
    check_order(n, minimum=1)
    g, b = _gate_with_sum(a.base, h)
    if g.verdict is not GateVerdict.STRICT:
        raise GateFailed(g)
    root = principal_sqrt(a)
    d = principal_sqrt(assert_spd(b)).base - root.base
    stack = derivative_stack(a, h, n)
    delta = d - stack.partial_sum(n)

    total = d @ delta + delta @ d - delta @ delta
    for m in range(n + 2, 2 * n + 1):
        for p in range(m - n, n + 1):
            total = total + stack.term(p) @ stack.term(m - p)
    return -sylvester_sqrt_solve(root, SymMatrix(total))


def weyl_lower_bound(a: SymMatrix, h: SymMatrix) -> float:
    """λ_min(A) − ‖H‖₂ ≤ λ_min(A+H)."""
    return lambda_min(a) - norm(h, NormKind.SPECTRAL)


def segment_lambda_floor(a: SpdMatrix, eps: float) -> float:
    """(1−ε)·λ_min(A), a lower bound for λ_min(A+εH) when A and A+H are SPD."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"segment parameter must lie in [0, 1], got {eps}")
    return (1.0 - eps) * a.lambda_min


def actual_errors(a: SpdMatrix, h: SymMatrix, max_order: int, kind: NormKind = NormKind.SPECTRAL) -> np.ndarray:
    """‖φ(A+H) − φ(A) − T_n‖ for n = 0..max_order from a single stack."""
    check_order(max_order)
    g, b = _gate_with_sum(a.base, h)
    if g.verdict is not GateVerdict.STRICT:
        raise GateFailed(g)
    root = principal_sqrt(a).base
    truth = principal_sqrt(assert_spd(b)).base
    errors = [norm(truth - root, kind)]
    if max_order > 0:
        stack = derivative_stack(a, h, max_order)
        approx = root
        for k in range(1, max_order + 1):
            approx = approx + stack.term(k)
            errors.append(norm(truth - approx, kind))
    return np.array(errors)
