import os, sys, asyncio
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from dataclasses import replace

import numpy as np
import pytest

from sqrtx_pkg.config import DEFAULT_RUN
from sqrtx_pkg.jsonfmt import dumps
from sqrtx_pkg.linalg import NormKind, lambda_min, norm
from sqrtx_pkg.suite import random_direction, random_spd, run_case, run_suite

SMALL = replace(DEFAULT_RUN, cases=6, dim_min=1, dim_max=4, max_order=3, workers=2)


def test_random_spd_spectrum_and_direction():
    rng = np.random.default_rng(0)
    a = random_spd(rng, 6, 0.5, 2.0)
    assert 0.5 <= a.lambda_min
    assert norm(a.base) <= 2.0 + 1e-12
    h = random_direction(rng, a, 0.3)
    assert norm(h, NormKind.SPECTRAL) == pytest.approx(0.3 * a.lambda_min)
    assert lambda_min(a.base + h) > 0


def test_run_case_is_seeded_per_index():
    first = run_case(SMALL, 3, [])
    again = run_case(SMALL, 3, [])
    assert first == again


def test_run_suite_passes_and_is_deterministic():
    summary = asyncio.run(run_suite(SMALL))
    assert summary.cases == 6
    assert summary.failures == 0
    assert summary.seed == SMALL.seed
    assert 0 < summary.max_bound_ratio <= 1
    assert summary.max_oracle_disagreement <= 1e-6
    serial = asyncio.run(run_suite(replace(SMALL, workers=1)))
    assert dumps(serial.to_dict()) == dumps(summary.to_dict())


def test_run_suite_zero_cases():
    summary = asyncio.run(run_suite(replace(SMALL, cases=0)))
    assert summary.to_dict() == {
        "cases": 0,
        "failures": 0,
        "max_bound_ratio": 0.0,
        "max_oracle_disagreement": 0.0,
        "seed": SMALL.seed,
    }


def test_run_suite_forced_failure():
    summary = asyncio.run(run_suite(replace(SMALL, bound_scale=0.5)))
    assert summary.failures == summary.cases == 6


def test_run_suite_rejects_bad_config():
    for bad in (dict(cases=-1), dict(dim_min=5, dim_max=2), dict(rho=0.0), dict(max_order=30)):
        with pytest.raises(ValueError):
            asyncio.run(run_suite(replace(SMALL, **bad)))
