from typing import Optional


class SqrtxError(Exception):
    pass


class AsymmetricMatrix(SqrtxError, ValueError):
    def __init__(self, asymmetry: float, tolerance: float):
        self.asymmetry = asymmetry
        self.tolerance = tolerance
        super().__init__(f"matrix is not symmetric: max asymmetry {asymmetry:.3e} > tolerance {tolerance:.3e}")


class DimensionMismatch(SqrtxError, ValueError):
    pass


class NonFiniteMatrix(SqrtxError, ValueError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"matrix has {count} non-finite entries")


class NotPositiveDefinite(SqrtxError, ValueError):
    def __init__(self, lambda_min: float, threshold: float):
        self.lambda_min = lambda_min
        self.threshold = threshold
        super().__init__(f"matrix is not positive definite: lambda_min={lambda_min:.17g} <= {threshold:.3e}")


class EigenNotConverged(SqrtxError, RuntimeError):
    def __init__(self, sweeps: int, off_norm: float, tolerance: float):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps: "
            f"off-diagonal norm {off_norm:.3e} > {tolerance:.3e}"
        )


class OrderTooLarge(SqrtxError, ValueError):
    pass


class GateFailed(SqrtxError, ValueError):
    def __init__(self, gate: object, message: Optional[str] = None):
        self.gate = gate
        super().__init__(message or f"perturbation gate failed: {gate}")


class MatrixFileError(SqrtxError, ValueError):
    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {reason}")
