import os
import json
from dataclasses import dataclass, field
from typing import Dict, List

QUAD_NODES = os.getenv("SQRTX_QUAD_NODES")
config_path = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.json")
CONFIG_FILE = os.getenv("SQRTX_CONFIG_FILE", config_path)
try:
    with open(CONFIG_FILE) as f:
        _conf = json.load(f)
except FileNotFoundError:
    _conf = {}

MAX_ORDER = 30
BOUND_SLACK = 1e-8
DEFAULT_ORDER = int(_conf.get("order", 2))
DEFAULT_NORM = _conf.get("norm", "spectral")


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre layout.

    `horizon` is scheme specific: the Lyapunov truncation factor T·λ_min^{1/2},
    the resolvent cut-off factor U/‖A‖₂^{1/2}; the remainder integral always
    runs over [0, 1] and ignores it.
    """

    panels: int
    nodes_per_panel: int
    horizon: float

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise ValueError(f"quadrature needs positive panels/nodes, got {self.panels}x{self.nodes_per_panel}")
        if self.node_count < 8:
            raise ValueError(f"quadrature node_count must be >= 8, got {self.node_count}")
        if self.horizon <= 0:
            raise ValueError(f"quadrature horizon must be positive, got {self.horizon}")

    @property
    def node_count(self) -> int:
        return self.panels * self.nodes_per_panel


@dataclass(frozen=True)
class RunConfig:
    order: int = 2
    norm: str = "spectral"
    cases: int = 200
    dim_min: int = 1
    dim_max: int = 10
    rho: float = 0.3
    lambda_lo: float = 0.1
    lambda_hi: float = 10.0
    max_order: int = 6
    seed: int = 42
    oracles: List[str] = field(default_factory=lambda: ["lyapunov", "resolvent"])
    oracle_dim_max: int = 8
    workers: int = 4
    bound_scale: float = 1.0


def _quad_spec(data: Dict[str, float], default: QuadratureSpec) -> QuadratureSpec:
    nodes = int(data.get("nodes_per_panel", default.nodes_per_panel))
    if QUAD_NODES:
        nodes = int(QUAD_NODES)
    return QuadratureSpec(
        panels=int(data.get("panels", default.panels)),
        nodes_per_panel=nodes,
        horizon=float(data.get("horizon", default.horizon)),
    )


_quad = _conf.get("quadrature", {})
LYAPUNOV_QUADRATURE = _quad_spec(_quad.get("lyapunov", {}), QuadratureSpec(32, 8, 40.0))
RESOLVENT_QUADRATURE = _quad_spec(_quad.get("resolvent", {}), QuadratureSpec(64, 8, 50.0))
REMAINDER_QUADRATURE = _quad_spec(_quad.get("remainder", {}), QuadratureSpec(4, 8, 1.0))


def _run_config(data: Dict[str, object]) -> RunConfig:
    known = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"Unknown verify settings: {sorted(unknown)}")
    return RunConfig(**{"order": DEFAULT_ORDER, "norm": DEFAULT_NORM, **data})


DEFAULT_RUN: RunConfig = _run_config(_conf.get("verify", {}))
