"""
CSV serialisation of grid functions and solution fields.

Numbers are written with :func:`repr`, the shortest text that parses back
to the same double, so a write/read cycle is bit-exact. ``+inf`` is the
token ``inf``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from mtcl.errors import GridError
from mtcl.grid import Grid, GridFn
from mtcl.report import fmt

__all__ = [
    "write_gridfn",
    "read_gridfn",
    "FieldTable",
    "write_hjfield",
    "write_clawfield",
    "read_field",
    "write_summary",
]

_GRIDFN_HEADER = re.compile(r"#\s*gridfn v1 n=(\S+) xmin=(\S+) xmax=(\S+)\s*$")


def _num(v):
    return fmt(float(v))


def gridfn_text(f: GridFn) -> str:
    lines = [f"# gridfn v1 n={f.n} xmin={_num(f.x_min)} xmax={_num(f.x_max)}", "x,value"]
    lines += [f"{_num(x)},{_num(v)}" for x, v in zip(f.nodes, f.values)]
    return "\n".join(lines) + "\n"


def write_gridfn(f: GridFn, path):
    Path(path).write_text(gridfn_text(f))


def read_gridfn(path) -> GridFn:
    """Parse a ``gridfn v1`` file; the grid comes from the header, values from the second column."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise GridError(f"{path}: empty file")
    m = _GRIDFN_HEADER.match(lines[0])
    if not m:
        raise GridError(f"{path}: line 1: expected '# gridfn v1 n=<n> xmin=<x_min> xmax=<x_max>'")
    try:
        n, x_min, x_max = int(m.group(1)), float(m.group(2)), float(m.group(3))
    except ValueError as e:
        raise GridError(f"{path}: line 1: {e}") from None
    if len(lines) < 2 or lines[1].strip() != "x,value":
        raise GridError(f"{path}: line 2: expected column header 'x,value'")
    rows = [ln for ln in lines[2:] if ln.strip()]
    if len(rows) != n:
        raise GridError(f"{path}: header declares n={n} but {len(rows)} rows follow")
    values = np.empty(n)
    for i, ln in enumerate(rows):
        parts = ln.split(",")
        if len(parts) != 2:
            raise GridError(f"{path}: line {i + 3}: expected 2 columns")
        try:
            values[i] = float(parts[1])
        except ValueError:
            raise GridError(f"{path}: line {i + 3}: malformed number {parts[1]!r}") from None
    return GridFn(Grid(x_min, x_max, n), values)


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Contents of an ``hjfield``/``clawfield`` file, reshaped to the ``t1 x t2 x x`` lattice."""

    kind: str
    t1: np.ndarray
    t2: np.ndarray
    x: np.ndarray
    values: np.ndarray
    y_min: np.ndarray


def _field_text(kind, column, t1, t2, x, values, y):
    out = [f"# {kind} v1", f"t1,t2,x,{column},y_min"]
    xs = [_num(v) for v in x]
    for i, a in enumerate(t1):
        sa = _num(a)
        for j, b in enumerate(t2):
            sb = _num(b)
            row_v = values[i, j]
            row_y = y[i, j]
            out.extend(f"{sa},{sb},{xk},{_num(v)},{_num(yk)}" for xk, v, yk in zip(xs, row_v, row_y))
    return "\n".join(out) + "\n"


def write_hjfield(f, path):
    """``# hjfield v1`` with columns ``t1,t2,x,w,y_min`` (``y_min`` is the minimiser coordinate)."""
    Path(path).write_text(_field_text("hjfield", "w", f.t1, f.t2, f.grid.nodes, f.w, f.y_nodes()))


def write_clawfield(f, path):
    """``# clawfield v1`` with columns ``t1,t2,x,u,y_min``; ``nan`` where no minimiser is recorded."""
    Path(path).write_text(_field_text("clawfield", "u", f.t1, f.t2, f.grid.nodes, f.u, f.y_nodes()))


def read_field(path) -> FieldTable:
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise GridError(f"{path}: empty file")
    head = lines[0].strip()
    kinds = {"# hjfield v1": ("hjfield", "w"), "# clawfield v1": ("clawfield", "u")}
    if head not in kinds:
        raise GridError(f"{path}: line 1: unknown field header {head!r}")
    kind, col = kinds[head]
    if len(lines) < 2 or lines[1].strip() != f"t1,t2,x,{col},y_min":
        raise GridError(f"{path}: line 2: expected 't1,t2,x,{col},y_min'")
    try:
        data = np.array([[float(v) for v in ln.split(",")] for ln in lines[2:] if ln.strip()])
    except ValueError as e:
        raise GridError(f"{path}: {e}") from None
    if data.ndim != 2 or data.shape[1] != 5:
        raise GridError(f"{path}: expected 5 columns")
    t1 = np.unique(data[:, 0])
    t2 = np.unique(data[:, 1])
    x = np.unique(data[:, 2])
    shape = (t1.size, t2.size, x.size)
    if data.shape[0] != np.prod(shape):
        raise GridError(f"{path}: rows do not form a full t1 x t2 x x lattice")
    return FieldTable(kind, t1, t2, x, data[:, 3].reshape(shape), data[:, 4].reshape(shape))


def write_summary(items, path):
    """``key=value`` per line, in the given order."""
    Path(path).write_text("".join(f"{k}={v}\n" for k, v in items))
