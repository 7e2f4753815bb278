"""Seeded random SPD instances and the verification suite behind `sqrtx verify`."""

import asyncio
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from .config import BOUND_SLACK, DEFAULT_RUN, MAX_ORDER, RunConfig
from .frechet import derivative_norm_bound, derivative_stack, frechet_first
from .linalg import NormKind, SpdMatrix, SymMatrix, assert_spd, norm
from .oracles.base import FrechetOracle
from .oracles.finite_difference import FiniteDifferenceOracle
from .oracles.lyapunov import LyapunovOracle
from .oracles.resolvent import ResolventOracle
from .taylor import GateVerdict, check_ando_hemmen, report

log = logging.getLogger(__name__)

SATURATION_TOL = 1e-12
ORACLE_TOL = 1e-6


def build_oracles(enabled: Optional[List[str]] = None) -> List[FrechetOracle]:
    oracles: List[FrechetOracle] = []
    for name in DEFAULT_RUN.oracles if enabled is None else enabled:
        if name == "lyapunov":
            oracles.append(LyapunovOracle())
        elif name == "resolvent":
            oracles.append(ResolventOracle())
        elif name == "finite_difference":
            oracles.append(FiniteDifferenceOracle())
        else:
            raise ValueError(f"Unknown oracle: {name}")
    return oracles


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def random_spd(rng: np.random.Generator, dim: int, lambda_lo: float = 0.1, lambda_hi: float = 10.0) -> SpdMatrix:
    """U·diag(d)·Uᵀ with d log-uniform in [lambda_lo, lambda_hi]."""
    u = random_orthogonal(rng, dim)
    d = np.exp(rng.uniform(math.log(lambda_lo), math.log(lambda_hi), dim))
    return assert_spd(SymMatrix((u * d) @ u.T))


def random_symmetric(rng: np.random.Generator, dim: int) -> SymMatrix:
    g = rng.standard_normal((dim, dim))
    return SymMatrix(g + g.T)


def random_direction(rng: np.random.Generator, a: SpdMatrix, rho: float) -> SymMatrix:
    """H with ‖H‖₂ = rho·λ_min(A)."""
    g = random_symmetric(rng, a.dim)
    return g * (rho * a.lambda_min / norm(g, NormKind.SPECTRAL))


def scalar_saturation_error(a: float, h: float, n: int, bound_scale: float = 1.0) -> float:
    """|ratio − 1| where ratio = |φ^{(n+1)}(a)| / derivative_norm_bound(n, a, 1), via the 1×1 recursion."""
    h = h or 1.0
    stack = derivative_stack(assert_spd(SymMatrix([[a]])), SymMatrix([[h]]), n + 1)
    derivative = abs(stack.derivative(n + 1).entries[0, 0]) / abs(h) ** (n + 1)
    return abs(derivative / (bound_scale * derivative_norm_bound(n, a, 1.0)) - 1.0)


def validate_run_config(config: RunConfig):
    if config.cases < 0:
        raise ValueError(f"cases must be >= 0, got {config.cases}")
    if not 1 <= config.dim_min <= config.dim_max:
        raise ValueError(f"need 1 <= dim_min <= dim_max, got {config.dim_min}..{config.dim_max}")
    if not 0 <= config.max_order < MAX_ORDER:
        raise ValueError(f"max_order must be in 0..{MAX_ORDER - 1}, got {config.max_order}")
    if not 0 < config.lambda_lo <= config.lambda_hi:
        raise ValueError(f"need 0 < lambda_lo <= lambda_hi, got {config.lambda_lo}, {config.lambda_hi}")
    if not config.rho > 0:
        raise ValueError(f"rho must be positive, got {config.rho}")
    if not config.bound_scale > 0:
        raise ValueError(f"bound_scale must be positive, got {config.bound_scale}")


@dataclass
class CaseResult:
    index: int
    dim: int
    order: int
    norm: str
    bound_ratio: float = 0.0
    oracle_disagreement: float = 0.0
    failures: List[str] = field(default_factory=list)


@dataclass
class VerifySummary:
    cases: int
    failures: int
    max_bound_ratio: float
    max_oracle_disagreement: float
    seed: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "cases": self.cases,
            "failures": self.failures,
            "max_bound_ratio": self.max_bound_ratio,
            "max_oracle_disagreement": self.max_oracle_disagreement,
            "seed": self.seed,
        }


def _oracle_disagreement(a: SpdMatrix, h: SymMatrix, oracles: List[FrechetOracle]) -> float:
    values = [frechet_first(a, h)] + [o.frechet(a, h) for o in oracles]
    scale = norm(values[0], NormKind.FROBENIUS) or 1.0
    worst = 0.0
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            worst = max(worst, norm(values[i] - values[j], NormKind.FROBENIUS) / scale)
    return worst


def run_case(config: RunConfig, index: int, oracles: List[FrechetOracle]) -> CaseResult:
    rng = np.random.default_rng([config.seed, index])
    dim = int(rng.integers(config.dim_min, config.dim_max + 1))
    n = int(rng.integers(0, config.max_order + 1))
    kind = NormKind.SPECTRAL if index % 2 == 0 else NormKind.FROBENIUS
    a = random_spd(rng, dim, config.lambda_lo, config.lambda_hi)
    h = random_direction(rng, a, config.rho)
    result = CaseResult(index=index, dim=dim, order=n, norm=kind.value)
    scale = config.bound_scale

    rep = report(a.base, h, n, kind)
    if rep.gate.verdict is not GateVerdict.STRICT:
        result.failures.append(f"gate {rep.gate.verdict.value}")
        return result
    bound = rep.remainder_bound * scale
    result.bound_ratio = rep.actual_error / bound if bound > 0 else 0.0
    if rep.actual_error > bound * (1 + BOUND_SLACK):
        result.failures.append(f"remainder bound: error {rep.actual_error:.3e} > {bound:.3e}")

    b = assert_spd(a.base + h)
    for k in NormKind:
        actual, ah_bound, _ = check_ando_hemmen(a, b, k)
        if actual > ah_bound * scale * (1 + BOUND_SLACK):
            result.failures.append(f"ando-hemmen ({k.value}): {actual:.3e} > {ah_bound * scale:.3e}")

    saturation = scalar_saturation_error(a.lambda_min, rep.gate.spectral_norm_H, n, scale)
    if saturation > SATURATION_TOL:
        result.failures.append(f"scalar saturation off by {saturation:.3e}")

    if oracles and dim <= config.oracle_dim_max:
        result.oracle_disagreement = _oracle_disagreement(a, h, oracles)
        if result.oracle_disagreement > ORACLE_TOL:
            result.failures.append(f"oracle disagreement {result.oracle_disagreement:.3e}")
    return result


async def run_suite(config: RunConfig, oracles: Optional[List[FrechetOracle]] = None) -> VerifySummary:
    validate_run_config(config)
    oracles = build_oracles(config.oracles) if oracles is None else oracles
    sem = asyncio.Semaphore(max(1, config.workers))

    async def _one(index: int) -> CaseResult:
        async with sem:
            return await asyncio.to_thread(run_case, config, index, oracles)

    results = await asyncio.gather(*(_one(i) for i in range(config.cases)))
    results = sorted(results, key=lambda r: r.index)
    failed = [r for r in results if r.failures]
    for r in failed:
        log.warning("case %d (r=%d, n=%d, %s) failed: %s", r.index, r.dim, r.order, r.norm, "; ".join(r.failures))
    summary = VerifySummary(
        cases=len(results),
        failures=len(failed),
        max_bound_ratio=max((r.bound_ratio for r in results), default=0.0),
        max_oracle_disagreement=max((r.oracle_disagreement for r in results), default=0.0),
        seed=config.seed,
    )
    log.info("verify finished: %s", summary)
    return summary
