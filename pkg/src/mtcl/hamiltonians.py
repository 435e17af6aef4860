"""
Convex coercive Hamiltonians (equivalently, convex fluxes) of one variable.

Every Hamiltonian is normalised so that ``H(0) = 0``. The concrete kinds are

* :class:`Quadratic` -- ``a p**2 / 2``
* :class:`PowerEven` -- ``a p**k / k`` for even ``k``
* :class:`TabulatedConvex` -- piecewise-linear interpolation of a convex table,
  ``+inf`` outside the table
* :class:`Combined` -- nonnegative combination ``sum_i t_i H_i``, produced by
  :func:`combine`

Power laws carry a closed-form conjugate; the others are conjugated
numerically by :func:`mtcl.convex.conjugate`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from mtcl.errors import ConvexityError, GridError
from mtcl.grid import Grid, GridFn, as_time_pair

__all__ = [
    "Hamiltonian",
    "PowerEven",
    "Quadratic",
    "TabulatedConvex",
    "Combined",
    "Zero",
    "combine",
    "scale",
    "sample",
    "check_convex",
    "check_coercive",
]


class Hamiltonian:
    """Common interface. Subclasses implement ``eval`` and ``deriv``."""

    closed_form_conjugate = False

    def eval(self, p):
        raise NotImplementedError

    def deriv(self, p):
        raise NotImplementedError

    def __call__(self, p):
        return self.eval(p)

    def conjugate(self, z):
        raise NotImplementedError(f"{type(self).__name__} has no closed-form conjugate")

    def conjugate_deriv(self, z):
        raise NotImplementedError(f"{type(self).__name__} has no closed-form conjugate")

    def argmin(self):
        """Smallest minimiser of ``H``."""
        raise NotImplementedError

    def max_abs_deriv(self, lo, hi):
        """Lipschitz constant of ``H`` on ``[lo, hi]`` (convexity makes the endpoints extremal)."""
        return float(max(abs(self.deriv(lo)), abs(self.deriv(hi))))

    def max_on_ball(self, r):
        return float(max(self.eval(-r), self.eval(r)))

    def minimum(self):
        return float(self.eval(self.argmin()))

    def speed_range(self, lo, hi):
        """Extreme propagation speeds ``H'`` over states in ``[lo, hi]``."""
        return float(self.deriv(lo)), float(self.deriv(hi))


@dataclass(frozen=True)
class PowerEven(Hamiltonian):
    """``H(p) = a * p**k / k`` with even ``k >= 2`` and ``a > 0``."""

    k: int
    a: float = 1.0

    closed_form_conjugate = True

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 2 or self.k % 2:
            raise ValueError(f"PowerEven needs an even exponent k >= 2, got {self.k}")
        if not (np.isfinite(self.a) and self.a > 0):
            raise ValueError(f"PowerEven needs a > 0, got {self.a}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "a", float(self.a))

    def eval(self, p):
        p = np.asarray(p, dtype=np.float64)
        return self.a * p**self.k / self.k

    def deriv(self, p):
        p = np.asarray(p, dtype=np.float64)
        return self.a * p ** (self.k - 1)

    def conjugate(self, z):
        z = np.asarray(z, dtype=np.float64)
        kk = self.k / (self.k - 1)
        return np.abs(z) ** kk / (kk * self.a ** (kk - 1))

    def conjugate_deriv(self, z):
        z = np.asarray(z, dtype=np.float64)
        return np.sign(z) * (np.abs(z) / self.a) ** (1.0 / (self.k - 1))

    def argmin(self):
        return 0.0


@dataclass(frozen=True)
class Quadratic(PowerEven):
    """``H(p) = a * p**2 / 2``; Burgers' flux for ``a = 1``."""

    k: int = 2
    a: float = 1.0

    def __init__(self, a=1.0):
        object.__setattr__(self, "k", 2)
        object.__setattr__(self, "a", a)
        self.__post_init__()

    def eval(self, p):
        p = np.asarray(p, dtype=np.float64)
        return self.a * p * p / 2

    def deriv(self, p):
        return self.a * np.asarray(p, dtype=np.float64)

    def conjugate(self, z):
        z = np.asarray(z, dtype=np.float64)
        return z * z / (2 * self.a)

    def conjugate_deriv(self, z):
        return np.asarray(z, dtype=np.float64) / self.a


class Zero(Hamiltonian):
    """``H = 0``: the combination at ``t = (0, 0)``. Its conjugate is the indicator of ``{0}``."""

    closed_form_conjugate = True

    def eval(self, p):
        return np.zeros_like(np.asarray(p, dtype=np.float64))

    def deriv(self, p):
        return np.zeros_like(np.asarray(p, dtype=np.float64))

    def conjugate(self, z):
        z = np.asarray(z, dtype=np.float64)
        return np.where(z == 0, 0.0, np.inf)

    def conjugate_deriv(self, z):
        return np.zeros_like(np.asarray(z, dtype=np.float64))

    def argmin(self):
        return 0.0

    def __eq__(self, other):
        return isinstance(other, Zero)

    def __hash__(self):
        return hash(Zero)

    def __repr__(self):
        return "Zero()"


class TabulatedConvex(Hamiltonian):
    """Piecewise-linear interpolant of a convex table; ``+inf`` off the table."""

    def __init__(self, table: GridFn, h0_tol=1e-12):
        if not table.is_finite():
            raise GridError("tabulated Hamiltonian must be finite on its table")
        if not table.is_convex():
            raise ConvexityError("tabulated Hamiltonian is not convex")
        if not table.x_min <= 0.0 <= table.x_max:
            raise GridError("tabulated Hamiltonian must contain p = 0")
        h0 = float(table(0.0))
        if abs(h0) > h0_tol * max(1.0, table.sup_norm()):
            raise ValueError(f"tabulated Hamiltonian must satisfy H(0) = 0, got {h0!r}")
        self.table = table

    def eval(self, p):
        return self.table(p)

    def deriv(self, p):
        p = np.asarray(p, dtype=np.float64)
        s = np.diff(self.table.values) / self.table.dx
        i = np.floor((p - self.table.x_min) / self.table.dx).astype(np.int64)
        return s[np.clip(i, 0, s.size - 1)]

    def argmin(self):
        return float(self.table.nodes[int(np.argmin(self.table.values))])

    def __repr__(self):
        return f"TabulatedConvex(n={self.table.n}, [{self.table.x_min}, {self.table.x_max}])"


@dataclass(frozen=True)
class Combined(Hamiltonian):
    """``sum_i w_i H_i`` with positive weights."""

    terms: tuple

    def eval(self, p):
        out = 0.0
        for w, h in self.terms:
            out = out + w * h.eval(p)
        return out

    def deriv(self, p):
        out = 0.0
        for w, h in self.terms:
            out = out + w * h.deriv(p)
        return out

    def argmin(self):
        d0 = float(self.deriv(0.0))
        if d0 == 0.0:
            return 0.0
        step = -np.sign(d0)
        lo, hi = 0.0, step
        while np.sign(float(self.deriv(hi))) == np.sign(d0):
            lo, hi = hi, 2 * hi
            if abs(hi) > 1e12:
                raise ValueError("combined Hamiltonian has no minimiser (not coercive)")
        a, b = sorted((lo, hi))
        return float(brentq(lambda p: float(self.deriv(p)), a, b, xtol=1e-14))


def _combine_terms(terms):
    terms = [(float(w), h) for w, h in terms if w != 0]
    for w, _ in terms:
        if w < 0:
            raise ValueError(f"combination weights must be nonnegative, got {w}")
    if not terms:
        return Zero()
    flat = []
    for w, h in terms:
        if isinstance(h, Zero):
            continue
        if isinstance(h, Combined):
            flat.extend((w * wi, hi) for wi, hi in h.terms)
        else:
            flat.append((w, h))
    if not flat:
        return Zero()
    if len(flat) == 1 and flat[0][0] == 1.0:
        return flat[0][1]
    if all(isinstance(h, PowerEven) for _, h in flat) and len({h.k for _, h in flat}) == 1:
        k = flat[0][1].k
        a = sum(w * h.a for w, h in flat)
        return Quadratic(a) if k == 2 else PowerEven(k, a)
    return Combined(tuple(flat))


def combine(h1: Hamiltonian, h2: Hamiltonian, t) -> Hamiltonian:
    """The Hamiltonian ``t1 * h1 + t2 * h2`` (written ``t . H``).

    Zero weights are dropped, so ``combine(h, h, (0, 1))`` returns ``h``
    itself and ``combine(h1, h2, (t1, 0))`` is the same object as
    ``scale(h1, t1)``. Power laws of equal degree merge into a single
    power law, which keeps the closed-form conjugate available.
    """
    t = as_time_pair(t)
    return _combine_terms([(t.t1, h1), (t.t2, h2)])


def scale(h: Hamiltonian, t) -> Hamiltonian:
    """``t * h`` for a single time ``t >= 0``."""
    if t < 0:
        raise ValueError(f"times must be nonnegative, got {t}")
    return _combine_terms([(t, h)])


def sample(spec: Hamiltonian, x_min, x_max=None, n=None) -> GridFn:
    """Evaluate ``spec`` at the nodes of a uniform grid.

    ``x_min`` may also be a :class:`~mtcl.grid.Grid`.
    """
    grid = x_min if isinstance(x_min, Grid) else Grid(x_min, x_max, n)
    p = grid.nodes
    if isinstance(spec, TabulatedConvex) and spec.table.grid == grid:
        return spec.table
    with np.errstate(over="ignore", invalid="ignore"):
        v = np.asarray(spec.eval(p), dtype=np.float64)
    bad = ~np.isfinite(v)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise GridError(f"non-finite Hamiltonian value {v[i]!r} at node {i} (p={p[i]!r})")
    return GridFn(grid, v)


def check_convex(spec: Hamiltonian, grid: Grid) -> bool:
    """Discrete convexity of ``spec`` sampled on ``grid``."""
    return sample(spec, grid).is_convex()


def check_coercive(spec: Hamiltonian, slope, p_max) -> bool:
    """``H(p)/|p| > slope`` at ``p = +-p_max``: superlinear growth has won by ``p_max``."""
    with np.errstate(over="ignore"):
        lo = float(spec.eval(-p_max)) / p_max
        hi = float(spec.eval(p_max)) / p_max
    return lo > slope and hi > slope
