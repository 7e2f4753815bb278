import logging
import math
from typing import Tuple

import numpy as np

from ..config import QuadratureSpec
from ..linalg import SymMatrix

log = logging.getLogger(__name__)

EXPM_TERMS = 16
EXPM_SCALED_NORM = 0.5


def panel_edges(first_width: float, end: float, panels: int) -> np.ndarray:
    """[0, first_width] followed by geometrically growing panels up to `end`.

    Falls back to uniform panels when the first panel would not be the narrowest.
    """
    if panels == 1 or first_width * panels >= end:
        return np.linspace(0.0, end, panels + 1)
    ratio = (end / first_width) ** (1.0 / (panels - 1))
    edges = np.concatenate([[0.0], first_width * ratio ** np.arange(panels)])
    edges[-1] = end
    return edges


def gauss_legendre_panels(first_width: float, end: float, spec: QuadratureSpec) -> Tuple[np.ndarray, np.ndarray]:
    if not end > 0 or not first_width > 0:
        raise ValueError(f"quadrature interval must be positive, got first_width={first_width}, end={end}")
    x, w = np.polynomial.legendre.leggauss(spec.nodes_per_panel)
    edges = panel_edges(first_width, end, spec.panels)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2.0
    nodes = (lo + hi) / 2.0 + half * x[None, :]
    weights = half * w[None, :]
    log.debug("gauss-legendre %dx%d on [0, %.3e], first panel %.3e", spec.panels, spec.nodes_per_panel, end, edges[1])
    return nodes.ravel(), weights.ravel()


def expm_sym(m: SymMatrix) -> SymMatrix:
    """Scaling and squaring with a truncated Taylor series."""
    a = m.entries
    size = float(np.linalg.norm(a, 1))
    squarings = max(0, math.ceil(math.log2(size / EXPM_SCALED_NORM))) if size > EXPM_SCALED_NORM else 0
    x = a / 2.0 ** squarings
    term = np.eye(m.dim)
    total = np.eye(m.dim)
    for k in range(1, EXPM_TERMS + 1):
        term = term @ x / k
        total = total + term
    for _ in range(squarings):
        total = total @ total
    return SymMatrix(total)
