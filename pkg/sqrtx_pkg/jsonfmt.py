"""JSON rendering with every float written to 17 significant digits."""

import json
import math
from typing import Any

import numpy as np

DIGITS = 17


def format_float(value: float) -> str:
    return format(float(value), f".{DIGITS}g")


def _render(value: Any) -> str:
    if value is None or isinstance(value, (bool, np.bool_)):
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value) if math.isfinite(value) else "null"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_render(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_render(v) for v in value) + "]"
    return json.dumps(value)


def dumps(value: Any) -> str:
    return _render(value)
