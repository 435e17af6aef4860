"""
Godunov finite volumes for ``u_t + H(u)_x = 0`` with convex ``H``, and the
two-time solution obtained by evolving under ``H1`` and ``H2`` in turn.

Cell ``i`` is centred at node ``i`` of the grid; the boundary is outflow
(zeroth-order extrapolation into one ghost cell on either side).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import trapezoid

from mtcl.errors import CFLError, GridError, TruncationError
from mtcl.grid import Grid, GridFn, as_time_pair
from mtcl.hamiltonians import Hamiltonian

__all__ = [
    "FVState",
    "godunov_flux",
    "godunov_step",
    "evolve",
    "split_evolve",
    "l1_distance",
    "godunov_field",
]

H1_FIRST = "h1-first"
H2_FIRST = "h2-first"


@dataclass(frozen=True, eq=False)
class FVState:
    """Cell averages with their grid, flux and Courant number."""

    cells: np.ndarray
    grid: Grid
    flux: Hamiltonian
    cfl: float = 0.9

    def __post_init__(self):
        if not 0 < self.cfl <= 1:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl!r}")
        cells = np.array(self.cells, dtype=np.float64)
        if cells.shape != (self.grid.n,):
            raise GridError(f"cells must have shape ({self.grid.n},), got {cells.shape}")
        if not np.isfinite(cells).all():
            raise GridError("cell averages must be finite")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_gridfn(cls, u: GridFn, flux, cfl=0.9):
        return cls(u.values, u.grid, flux, cfl)

    @property
    def dx(self):
        return self.grid.dx

    @property
    def x_min(self):
        return self.grid.x_min

    def gridfn(self) -> GridFn:
        return GridFn(self.grid, self.cells)

    def mass(self):
        return float(np.sum(self.cells) * self.dx)

    def max_dt(self):
        """``cfl * dx / max |H'|`` over the range of the current cell values."""
        speed = self.flux.max_abs_deriv(float(np.min(self.cells)), float(np.max(self.cells)))
        return math.inf if speed == 0 else self.cfl * self.dx / speed


def godunov_flux(h: Hamiltonian, ul, ur):
    """Exact Riemann flux for convex ``h``: min over ``[ul, ur]`` if ``ul <= ur``, else max over ``[ur, ul]``."""
    ul = np.asarray(ul, dtype=np.float64)
    ur = np.asarray(ur, dtype=np.float64)
    m = h.argmin()
    lo = h.eval(np.clip(m, ul, ur))
    hi = np.maximum(h.eval(ul), h.eval(ur))
    return np.where(ul <= ur, lo, hi)


def godunov_step(s: FVState, dt) -> FVState:
    """One explicit step; raises :class:`~mtcl.errors.CFLError` when ``dt`` exceeds the admissible step."""
    dt_max = s.max_dt()
    if dt > dt_max * (1 + 1e-12):
        raise CFLError(dt, dt_max)
    u = s.cells
    ext = np.concatenate(([u[0]], u, [u[-1]]))
    f = godunov_flux(s.flux, ext[:-1], ext[1:])
    new = u - (dt / s.dx) * (f[1:] - f[:-1])
    return replace(s, cells=new)


def evolve(s: FVState, T) -> FVState:
    """Advance by ``T`` in ``ceil(T / dt_max)`` equal steps.

    The admissible step is fixed from the initial data range: the scheme is
    monotone, so later data never leave it.
    """
    if T < 0:
        raise ValueError(f"times must be nonnegative, got {T}")
    if T == 0:
        return s
    dt_max = s.max_dt()
    if not math.isfinite(dt_max):
        return s
    n = max(1, math.ceil(T / dt_max))
    dt = T / n
    for _ in range(n):
        s = godunov_step(s, dt)
    return s


def _check_domain(grid: Grid, report: Grid, reach):
    if report.x_min - reach < grid.x_min or report.x_max + reach > grid.x_max:
        raise TruncationError(
            f"truncation violated: waves travel {reach!r} from the window "
            f"[{report.x_min!r}, {report.x_max!r}] beyond the grid [{grid.x_min!r}, {grid.x_max!r}]"
        )


def split_evolve(u0: GridFn, h1, h2, t, order=H1_FIRST, report: Grid | None = None, cfl=0.9) -> GridFn:
    """Evolve ``t1`` under ``h1`` and ``t2`` under ``h2`` in the given order.

    Args:
        order: ``"h1-first"`` or ``"h2-first"``.
        report: grid to resample onto by linear interpolation; the window
            widened by ``M1 t1 + M2 t2`` must stay inside ``u0``'s grid
            (``M_i = max |H_i'|`` on the data range).
    """
    t = as_time_pair(t)
    if order not in (H1_FIRST, H2_FIRST):
        raise ValueError(f"order must be {H1_FIRST!r} or {H2_FIRST!r}, got {order!r}")
    lo, hi = float(np.min(u0.values)), float(np.max(u0.values))
    if report is not None:
        reach = h1.max_abs_deriv(lo, hi) * t.t1 + h2.max_abs_deriv(lo, hi) * t.t2
        _check_domain(u0.grid, report, reach)
    legs = [(h1, t.t1), (h2, t.t2)]
    if order == H2_FIRST:
        legs.reverse()
    cells = u0.values
    for h, T in legs:
        cells = evolve(FVState(cells, u0.grid, h, cfl), T).cells
    out = GridFn(u0.grid, cells)
    if report is None:
        return out
    return GridFn(report, np.interp(report.nodes, u0.nodes, cells))


def l1_distance(a: GridFn, b: GridFn, window=None):
    """Trapezoid ``int |a - b| dx`` over the nodes in ``window`` (default: the common range)."""
    if not a.grid.commensurate(b.grid):
        raise GridError(f"incommensurate grids: dx={a.dx!r} vs dx={b.dx!r}")
    lo = max(a.x_min, b.x_min)
    hi = min(a.x_max, b.x_max)
    if window is not None:
        lo, hi = max(lo, window[0]), min(hi, window[1])
    ra, rb = a.restrict(lo, hi), b.restrict(lo, hi)
    if ra.n != rb.n:
        raise GridError("grids do not share the window nodes")
    return float(trapezoid(np.abs(ra.values - rb.values), ra.nodes))


def godunov_field(problem, t1, t2, report: Grid, order=H1_FIRST, cfl=0.9):
    """Split Godunov solution on a ``t1 x t2`` lattice as a :class:`~mtcl.claw.ClawField`.

    States are advanced incrementally along each axis, so every lattice time
    reuses the previous one.
    """
    from mtcl.claw import ClawField
    from mtcl.hj import _time_axis

    t1, t2 = _time_axis(t1), _time_axis(t2)
    u0 = problem.u0
    lo, hi = float(np.min(u0.values)), float(np.max(u0.values))
    reach = problem.h1.max_abs_deriv(lo, hi) * t1[-1] + problem.h2.max_abs_deriv(lo, hi) * t2[-1]
    _check_domain(u0.grid, report, reach)
    outer, inner = (t1, t2) if order == H1_FIRST else (t2, t1)
    h_out, h_in = (problem.h1, problem.h2) if order == H1_FIRST else (problem.h2, problem.h1)
    u = np.empty((t1.size, t2.size, report.n))
    s_out = FVState(u0.values, u0.grid, h_out, cfl)
    prev_o = 0.0
    for a, ta in enumerate(outer):
        s_out = evolve(s_out, ta - prev_o)
        prev_o = ta
        s_in = FVState(s_out.cells, u0.grid, h_in, cfl)
        prev_i = 0.0
        for b, tb in enumerate(inner):
            s_in = evolve(s_in, tb - prev_i)
            prev_i = tb
            row = np.interp(report.nodes, u0.nodes, s_in.cells)
            if order == H1_FIRST:
                u[a, b] = row
            else:
                u[b, a] = row
    y = np.full(u.shape, -1, dtype=np.int64)
    klip = np.full((t1.size, t2.size), np.nan)
    return ClawField(problem, t1, t2, report, u, y, klip)
