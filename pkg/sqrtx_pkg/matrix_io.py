"""Plain-text matrix files: a dimension line, then r rows of r numbers; '#' starts a comment line."""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import AsymmetricMatrix, MatrixFileError
from .jsonfmt import format_float
from .linalg import SymMatrix, symmetrize


@dataclass(frozen=True, eq=False)
class MatrixFile:
    path: str
    dim: int
    entries: SymMatrix


def parse_matrix_text(text: str, path: str = "<string>") -> MatrixFile:
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise MatrixFileError(path, 1, "missing dimension line")
    header_no, header = lines[0]
    try:
        dim = int(header)
    except ValueError:
        raise MatrixFileError(path, header_no, f"dimension must be an integer, got {header!r}") from None
    if dim < 1:
        raise MatrixFileError(path, header_no, f"dimension must be positive, got {dim}")

    rows = lines[1:]
    if len(rows) != dim:
        last = rows[-1][0] if rows else header_no
        raise MatrixFileError(path, last, f"expected {dim} data rows, found {len(rows)}")
    data: List[List[float]] = []
    for no, line in rows:
        try:
            values = [float(tok) for tok in line.split()]
        except ValueError as e:
            raise MatrixFileError(path, no, f"bad number: {e}") from None
        if not all(math.isfinite(v) for v in values):
            raise MatrixFileError(path, no, f"non-finite value in {line!r}")
        if len(values) != dim:
            raise MatrixFileError(path, no, f"expected {dim} values, found {len(values)}")
        data.append(values)
    try:
        matrix = symmetrize(np.array(data))
    except AsymmetricMatrix as e:
        raise MatrixFileError(path, header_no, str(e)) from None
    return MatrixFile(path=path, dim=dim, entries=matrix)


def read_matrix_file(path: str) -> MatrixFile:
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise MatrixFileError(path, 0, f"cannot read file: {e.strerror}") from None
    except UnicodeDecodeError as e:
        raise MatrixFileError(path, 0, f"not a text file: {e.reason} at byte {e.start}") from None
    return parse_matrix_text(text, path)


def format_matrix(m: SymMatrix, comment: Optional[str] = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(str(m.dim))
    out.extend(" ".join(format_float(v) for v in row) for row in m.entries)
    return "\n".join(out) + "\n"


def write_matrix_file(path: str, m: SymMatrix, comment: Optional[str] = None):
    with open(path, "w") as f:
        f.write(format_matrix(m, comment))
