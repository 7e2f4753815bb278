"""Dense symmetric matrices, a cyclic Jacobi eigensolver, norms and the SPD gate."""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import AsymmetricMatrix, DimensionMismatch, EigenNotConverged, NonFiniteMatrix, NotPositiveDefinite

log = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
SYMMETRY_TOL = 1e-8
JACOBI_MAX_SWEEPS = 100


class NormKind(str, Enum):
    SPECTRAL = "spectral"
    FROBENIUS = "frobenius"

    def constant(self, dim: int) -> float:
        """K of the derivative bounds: 1 for the spectral norm, sqrt(r) for Frobenius."""
        return 1.0 if self is NormKind.SPECTRAL else math.sqrt(dim)


@dataclass(frozen=True, eq=False)
class SymMatrix:
    entries: np.ndarray
    asymmetry: float = 0.0

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {arr.shape}")
        # (M + M^T) / 2 is exact on symmetric input, so this only removes drift
        arr = (arr + arr.T) / 2.0
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @classmethod
    def zeros(cls, dim: int) -> "SymMatrix":
        return cls(np.zeros((dim, dim)))

    @classmethod
    def diag(cls, values: Iterable[float]) -> "SymMatrix":
        return cls(np.diag(np.asarray(list(values), dtype=float)))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def eigen(self) -> "EigenDecomposition":
        return eig_sym(self)

    def _check(self, other: "SymMatrix"):
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "SymMatrix") -> "SymMatrix":
        self._check(other)
        return SymMatrix(self.entries + other.entries)

    def __sub__(self, other: "SymMatrix") -> "SymMatrix":
        self._check(other)
        return SymMatrix(self.entries - other.entries)

    def __neg__(self) -> "SymMatrix":
        return SymMatrix(-self.entries)

    def __mul__(self, scalar: float) -> "SymMatrix":
        return SymMatrix(self.entries * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "SymMatrix":
        return SymMatrix(self.entries / float(scalar))

    def __matmul__(self, other: "SymMatrix") -> np.ndarray:
        # products of symmetric matrices are not symmetric; callers symmetrize
        self._check(other)
        return self.entries @ other.entries

    def __repr__(self) -> str:
        return f"SymMatrix(dim={self.dim}, entries={self.entries.tolist()!r})"


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    basis: np.ndarray
    eigenvalues: np.ndarray

    def apply(self, fn: Callable[[np.ndarray], np.ndarray]) -> SymMatrix:
        """U·diag(fn(d))·Uᵀ."""
        u = self.basis
        return SymMatrix((u * fn(self.eigenvalues)) @ u.T)

    def orthogonality_error(self) -> float:
        u = self.basis
        return float(np.linalg.norm(u.T @ u - np.eye(u.shape[0]), "fro"))

    def residual(self, a: SymMatrix) -> float:
        u = self.basis
        return float(np.linalg.norm(a.entries @ u - u * self.eigenvalues, "fro"))


@dataclass(frozen=True, eq=False)
class SpdMatrix:
    base: SymMatrix
    lambda_min: float
    eigen: Optional[EigenDecomposition] = None

    def __post_init__(self):
        if not self.lambda_min > 0:
            raise NotPositiveDefinite(self.lambda_min, 0.0)
        if self.eigen is None:
            object.__setattr__(self, "eigen", self.base.eigen)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def entries(self) -> np.ndarray:
        return self.base.entries


def symmetrize(raw) -> SymMatrix:
    m = np.array(raw, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    bad = int(np.count_nonzero(~np.isfinite(m)))
    if bad:
        raise NonFiniteMatrix(bad)
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    scale = float(np.max(np.abs(m))) if m.size else 0.0
    tol = SYMMETRY_TOL * max(1.0, scale)
    if asym > tol:
        raise AsymmetricMatrix(asym, tol)
    return SymMatrix(m, asymmetry=asym)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a)), "fro"))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int):
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
    c = 1.0 / math.sqrt(t * t + 1.0)
    s = t * c

    col_p, col_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q
    row_p, row_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    col_p, col_q = v[:, p].copy(), v[:, q].copy()
    v[:, p] = c * col_p - s * col_q
    v[:, q] = s * col_p + c * col_q


def eig_sym(a: SymMatrix, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Cyclic Jacobi rotations; eigenvalues returned ascending."""
    r = a.dim
    work = np.array(a.entries, dtype=float)
    v = np.eye(r)
    tol = r * EPS * float(np.linalg.norm(work, "fro"))
    skip = tol / r

    if not math.isfinite(tol):
        raise EigenNotConverged(0, _off_norm(work), tol)
    off = _off_norm(work)
    sweeps = 0
    while off > tol:
        if sweeps >= max_sweeps:
            raise EigenNotConverged(sweeps, off, tol)
        for p in range(r - 1):
            for q in range(p + 1, r):
                if abs(work[p, q]) > skip:
                    _rotate(work, v, p, q)
        sweeps += 1
        off = _off_norm(work)

    if not math.isfinite(off):
        raise EigenNotConverged(sweeps, off, tol)
    log.debug("jacobi r=%d converged in %d sweeps (off=%.3e)", r, sweeps, off)
    d = np.diag(work).copy()
    order = np.argsort(d, kind="stable")
    return EigenDecomposition(basis=v[:, order], eigenvalues=d[order])


def norm(a: SymMatrix, kind: NormKind = NormKind.SPECTRAL) -> float:
    kind = NormKind(kind)
    if kind is NormKind.FROBENIUS:
        return float(np.linalg.norm(a.entries, "fro"))
    d = a.eigen.eigenvalues
    return float(max(abs(d[0]), abs(d[-1])))


def lambda_min(a: SymMatrix) -> float:
    return float(a.eigen.eigenvalues[0])


def spd_threshold(a: SymMatrix) -> float:
    return a.dim * EPS * norm(a, NormKind.SPECTRAL)


def is_spd(a: SymMatrix) -> bool:
    return lambda_min(a) > spd_threshold(a)


def assert_spd(a: SymMatrix) -> SpdMatrix:
    lam = lambda_min(a)
    threshold = spd_threshold(a)
    if not lam > threshold:
        raise NotPositiveDefinite(lam, threshold)
    return SpdMatrix(base=a, lambda_min=lam, eigen=a.eigen)
