"""
Uniform one-dimensional grids and extended-real grid functions.

Values are IEEE doubles; ``+inf`` is the only admissible non-finite value and
plays the role of the extended-real element ``+infinity`` (it absorbs
addition and dominates every finite number). ``-inf`` and ``nan`` are
rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from mtcl.errors import GridError, ImproperFunctionError

__all__ = ["Grid", "GridFn", "TimePair", "as_time_pair"]

# relative tolerance used to decide that two spacings (or an offset) agree
_ALIGN_RTOL = 1e-9


@dataclass(frozen=True)
class Grid:
    """Uniform grid descriptor: ``n`` nodes from ``x_min`` to ``x_max``."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)):
            raise GridError(f"grid bounds must be finite, got [{self.x_min}, {self.x_max}]")
        if not self.x_min < self.x_max:
            raise GridError(f"grid needs x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if int(self.n) != self.n or self.n < 2:
            raise GridError(f"grid needs at least 2 nodes, got n={self.n}")
        object.__setattr__(self, "x_min", float(self.x_min))
        object.__setattr__(self, "x_max", float(self.x_max))
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def from_spacing(cls, x_min, dx, n):
        return cls(x_min, x_min + (n - 1) * dx, n)

    @classmethod
    def symmetric(cls, half_width, n):
        return cls(-half_width, half_width, n)

    @property
    def dx(self):
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def nodes(self):
        return np.linspace(self.x_min, self.x_max, self.n)

    def commensurate(self, other):
        """True when both grids have the same spacing and nodes on a common lattice."""
        dx = self.dx
        if abs(dx - other.dx) > _ALIGN_RTOL * dx:
            return False
        shift = (other.x_min - self.x_min) / dx
        return abs(shift - round(shift)) < 1e-6

    def offset_of(self, other):
        """Integer index of ``other.x_min`` in the lattice of this grid."""
        if not self.commensurate(other):
            raise GridError(
                f"incommensurate grids: dx={self.dx!r} vs dx={other.dx!r}, "
                f"x_min={self.x_min!r} vs x_min={other.x_min!r}"
            )
        return int(round((other.x_min - self.x_min) / self.dx))

    def index_window(self, a, b):
        """Index range ``(i0, i1)`` (inclusive) of the nodes lying in ``[a, b]``."""
        dx = self.dx
        slack = 1e-9 * dx
        i0 = int(np.ceil((a - self.x_min - slack) / dx))
        i1 = int(np.floor((b - self.x_min + slack) / dx))
        i0, i1 = max(i0, 0), min(i1, self.n - 1)
        if i1 - i0 < 1:
            raise GridError(f"window [{a}, {b}] contains fewer than 2 nodes of {self}")
        return i0, i1

    def subgrid(self, i0, i1):
        x = self.nodes
        return Grid(x[i0], x[i1], i1 - i0 + 1)


def _check_values(values, n):
    values = np.array(values, dtype=np.float64)
    if values.ndim != 1 or values.shape[0] != n:
        raise GridError(f"values must be a 1-D array of length {n}, got shape {values.shape}")
    if np.isnan(values).any():
        raise GridError(f"values contain nan at node {int(np.flatnonzero(np.isnan(values))[0])}")
    if np.isneginf(values).any():
        raise GridError(f"values contain -inf at node {int(np.flatnonzero(np.isneginf(values))[0])}")
    if not np.isfinite(values).any():
        raise ImproperFunctionError("improper function: every value is +inf")
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class GridFn:
    """An extended-real function sampled on a uniform grid.

    Node ``i`` sits at ``x_min + i * dx``. Instances are immutable; the value
    array is flagged read-only.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values, self.grid.n))

    @classmethod
    def from_values(cls, x_min, x_max, values):
        values = np.asarray(values, dtype=np.float64)
        return cls(Grid(x_min, x_max, values.shape[0]), values)

    @classmethod
    def from_callable(cls, fn: Callable[[np.ndarray], np.ndarray], grid: Grid):
        return cls(grid, np.asarray(fn(grid.nodes), dtype=np.float64))

    @property
    def x_min(self):
        return self.grid.x_min

    @property
    def x_max(self):
        return self.grid.x_max

    @property
    def n(self):
        return self.grid.n

    @property
    def dx(self):
        return self.grid.dx

    @property
    def nodes(self):
        return self.grid.nodes

    @property
    def finite(self):
        return np.isfinite(self.values)

    def is_finite(self):
        return bool(self.finite.all())

    def slopes(self):
        """Divided differences between adjacent nodes (nan where either side is +inf)."""
        with np.errstate(invalid="ignore"):
            s = np.diff(self.values) / self.dx
        s[~(self.finite[1:] & self.finite[:-1])] = np.nan
        return s

    def lipschitz(self):
        """Largest adjacent slope in absolute value over finite neighbours."""
        s = self.slopes()
        s = s[np.isfinite(s)]
        return float(np.max(np.abs(s))) if s.size else 0.0

    def sup_norm(self):
        v = self.values[self.finite]
        return float(np.max(np.abs(v)))

    def slope_jumps(self):
        """Difference of consecutive slopes at interior nodes, i.e. ``D+ f - D- f``."""
        return np.diff(self.slopes())

    def is_convex(self, tol=None):
        """Discrete convexity: nondecreasing slopes up to a rounding tolerance."""
        if not self.is_finite():
            finite = self.finite
            idx = np.flatnonzero(finite)
            # the effective domain of a convex function is an interval
            if idx[-1] - idx[0] + 1 != idx.size:
                return False
            sub = self.restrict_index(idx[0], idx[-1]) if idx.size >= 2 else None
            return True if sub is None else sub.is_convex(tol)
        if self.n < 3:
            return True
        if tol is None:
            scale = max(1.0, float(np.max(np.abs(self.values))))
            tol = 64 * np.finfo(float).eps * scale / self.dx
        return bool(np.all(self.slope_jumps() >= -tol))

    def restrict_index(self, i0, i1):
        return GridFn(self.grid.subgrid(i0, i1), self.values[i0 : i1 + 1])

    def restrict(self, a, b):
        """Sub-function on the nodes lying in ``[a, b]``."""
        i0, i1 = self.grid.index_window(a, b)
        return self.restrict_index(i0, i1)

    def __call__(self, x):
        """Piecewise-linear interpolation; +inf outside the grid."""
        x = np.asarray(x, dtype=np.float64)
        out = np.interp(x, self.nodes, self.values)
        return np.where((x < self.x_min) | (x > self.x_max), np.inf, out)

    def with_values(self, values):
        return GridFn(self.grid, values)

    def __eq__(self, other):
        if not isinstance(other, GridFn):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.values, other.values)

    __hash__ = None


class TimePair(NamedTuple):
    t1: float
    t2: float

    @property
    def total(self):
        return self.t1 + self.t2

    def is_origin(self):
        return self.t1 == 0 and self.t2 == 0

    def __sub__(self, other):
        return TimePair(self.t1 - other[0], self.t2 - other[1])


def as_time_pair(t) -> TimePair:
    t1, t2 = (float(v) for v in t)
    if not (np.isfinite(t1) and np.isfinite(t2)):
        raise ValueError(f"time pair must be finite, got {t!r}")
    if t1 < 0 or t2 < 0:
        raise ValueError(f"times must be nonnegative, got ({t1}, {t2})")
    return TimePair(t1, t2)
