"""JSON state files and deterministic CSV output."""
from __future__ import annotations

import json
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .errors import ParseError
from .states import DensityMatrix


def matrix_to_json(m, dims: Optional[Sequence[int]] = None) -> dict:
    m = np.asarray(m, dtype=complex)
    out = {"dim": int(m.shape[0])}
    if dims is not None:
        out["dims"] = [int(d) for d in dims]
    out["matrix"] = [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return out


def state_to_json(state: DensityMatrix) -> dict:
    return matrix_to_json(state.matrix, state.dims)


def dumps_state(state) -> str:
    if isinstance(state, DensityMatrix):
        obj = state_to_json(state)
    else:
        obj = matrix_to_json(state)
    return json.dumps(obj) + "\n"


def parse_matrix(obj) -> tuple:
    """Return ``(matrix, dims)`` from a decoded state-file object."""
    try:
        dim = int(obj["dim"])
        rows = obj["matrix"]
        m = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed state file: {exc}") from None
    if m.shape != (dim, dim):
        raise ParseError(f"matrix has shape {m.shape}, header says dim {dim}")
    dims = tuple(obj.get("dims") or (dim,))
    if int(np.prod(dims)) != dim:
        raise ParseError(f"dims {list(dims)} do not multiply to {dim}")
    return m, dims


def loads_state(text: str, raw: bool = False):
    """Parse a state file; ``raw`` skips density-matrix validation and returns the array."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    m, dims = parse_matrix(obj)
    if raw:
        return m
    try:
        return DensityMatrix(m, dims)
    except ValueError as exc:
        raise ParseError(f"not a valid density matrix: {exc}") from None


def read_state(path: str, raw: bool = False):
    with open(path, encoding="utf-8") as fh:
        return loads_state(fh.read(), raw=raw)


def format_number(x: Optional[float]) -> str:
    if x is None:
        return ""
    return format(float(x) + 0.0, ".17g")


def format_csv(header: Sequence[str], rows: Iterable[Sequence[Optional[float]]]) -> str:
    lines: List[str] = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"
