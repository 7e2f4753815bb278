import argparse
import asyncio
import logging
import sys
from dataclasses import asdict, replace
from typing import List, Optional, Tuple

import numpy as np

from .config import DEFAULT_RUN, MAX_ORDER, RunConfig
from .errors import DimensionMismatch, EigenNotConverged, MatrixFileError, NotPositiveDefinite
from .frechet import derivative_stack, principal_sqrt, sylvester_residual
from .jsonfmt import dumps, format_float
from .linalg import NormKind, SpdMatrix, SymMatrix, assert_spd
from .matrix_io import format_matrix, read_matrix_file
from .suite import run_suite
from .taylor import GateVerdict, report

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_SPD = 3
EXIT_BOUND_VIOLATED = 4
EXIT_GATE_FAILED = 5
EXIT_NUMERIC = 6


def _order(minimum: int):
    def parse(text: str) -> int:
        try:
            n = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"order must be an integer, got {text!r}") from None
        if not minimum <= n <= MAX_ORDER:
            raise argparse.ArgumentTypeError(f"order must be in {minimum}..{MAX_ORDER}, got {n}")
        return n

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqrtx", description="Matrix square root, Frechet derivatives and certified Taylor bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sqrt", help="principal square root of an SPD matrix file")
    p.add_argument("a")

    p = sub.add_parser("frechet", help="print ∇^kφ(A)·H^{⊗k} for k = 1..order")
    p.add_argument("a")
    p.add_argument("h")
    p.add_argument("--order", type=_order(1), default=1)

    p = sub.add_parser("taylor", help="JSON report on the order-n Taylor approximation of √(A+H)")
    p.add_argument("a")
    p.add_argument("h")
    p.add_argument("--order", type=_order(0), default=DEFAULT_RUN.order)
    p.add_argument("--norm", choices=[k.value for k in NormKind], default=DEFAULT_RUN.norm)
    p.add_argument("--all-norms", action="store_true", help="include the bound for both norms")

    p = sub.add_parser("verify", help="run the randomized verification suite")
    p.add_argument("--cases", type=int)
    p.add_argument("--dim-min", type=int)
    p.add_argument("--dim-max", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-order", type=int)
    p.add_argument("--lambda-lo", type=float)
    p.add_argument("--lambda-hi", type=float)
    p.add_argument("--workers", type=int)
    p.add_argument("--bound-scale", type=float, help="multiply every checked bound (0.5 forces failures)")
    return parser


def _err(msg: str):
    print(f"sqrtx: {msg}", file=sys.stderr)


def _load_pair(a_path: str, h_path: str) -> Tuple[SymMatrix, SymMatrix]:
    a, h = read_matrix_file(a_path), read_matrix_file(h_path)
    if a.dim != h.dim:
        raise DimensionMismatch(f"A is {a.dim}x{a.dim} but H is {h.dim}x{h.dim}")
    return a.entries, h.entries


def cmd_sqrt(args) -> int:
    a = assert_spd(read_matrix_file(args.a).entries)
    s = principal_sqrt(a)
    residual = float(np.linalg.norm(s.entries @ s.entries - a.entries, "fro"))
    sys.stdout.write(format_matrix(s.base))
    sys.stdout.write(f"# residual {format_float(residual)}\n")
    return EXIT_OK


def cmd_frechet(args) -> int:
    a_raw, h = _load_pair(args.a, args.h)
    a: SpdMatrix = assert_spd(a_raw)
    stack = derivative_stack(a, h, args.order)
    for k in range(1, args.order + 1):
        sys.stdout.write(format_matrix(stack.derivative(k), comment=f"order {k}"))
    residual = sylvester_residual(principal_sqrt(a), stack.term(1), h)
    sys.stdout.write(f"# sylvester_residual {format_float(residual)}\n")
    return EXIT_OK


def cmd_taylor(args) -> int:
    a, h = _load_pair(args.a, args.h)
    assert_spd(a)
    rep = report(a, h, args.order, NormKind(args.norm), all_norms=args.all_norms)
    print(dumps(rep.to_dict()))
    if rep.gate.verdict is not GateVerdict.STRICT:
        log.warning("perturbation gate %s: A+H is not certified SPD", rep.gate.verdict.value)
        return EXIT_GATE_FAILED
    return EXIT_OK if rep.bound_satisfied else EXIT_BOUND_VIOLATED


def _run_config(args) -> RunConfig:
    overrides = {
        name: getattr(args, name)
        for name in ("cases", "dim_min", "dim_max", "rho", "seed", "max_order", "lambda_lo", "lambda_hi", "workers", "bound_scale")
        if getattr(args, name) is not None
    }
    return replace(DEFAULT_RUN, **overrides)


def cmd_verify(args) -> int:
    config = _run_config(args)
    log.info("verify configuration: %s", asdict(config))
    summary = asyncio.run(run_suite(config))
    print(dumps(summary.to_dict()))
    return EXIT_OK if summary.failures == 0 else EXIT_VERIFY_FAILED


COMMANDS = {
    "sqrt": cmd_sqrt,
    "frechet": cmd_frechet,
    "taylor": cmd_taylor,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (MatrixFileError, DimensionMismatch) as e:
        _err(str(e))
        return EXIT_USAGE
    except NotPositiveDefinite as e:
        _err(str(e))
        return EXIT_NOT_SPD
    except ValueError as e:
        _err(str(e))
        return EXIT_USAGE
    except EigenNotConverged as e:
        _err(str(e))
        return EXIT_NUMERIC
