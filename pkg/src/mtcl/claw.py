"""
Two-time scalar conservation law ``u_{t_i} + H_i(u)_x = 0``, ``u(0, 0, .) = u0``.

The entropy solution is read off the Hamilton-Jacobi minimiser: with ``g``
the primitive of ``u0`` and ``y(t, x)`` the smallest minimiser of
``(t.H)^*(x - y) + g(y)``,

    u(t, x) = ((t.H)^*)'(x - y(t, x)).

The derivative is the monotone selection stored with the Lax kernel, so
``u`` inherits its one-sided Lipschitz bound exactly. At a shock the
smallest minimiser is taken, which assigns the left state.

The verification functions work on the ``t1 x t2 x x`` lattice. Weak and
entropy forms pair the solution with test functions by summation by parts,
which is exact on constant states; every other integral uses the
trapezoid rule.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import trapezoid

from mtcl.errors import GridError
from mtcl.grid import Grid, GridFn, TimePair, as_time_pair
from mtcl.hamiltonians import Hamiltonian
from mtcl.hj import HJProblem, _lattice, _time_axis, lax_eval
from mtcl.report import Report
from mtcl.testfunctions import TestFn

__all__ = [
    "primitive",
    "ClawProblem",
    "ClawSlice",
    "ClawField",
    "lax_oleinik_eval",
    "lax_oleinik_field",
    "total_variation",
    "front_position",
    "tau_weak",
    "data_speed",
    "oleinik_report",
    "bv_report",
    "hj_consistency",
    "weak_residual",
    "entropy_residual",
    "initial_trace",
    "Bump1D",
    "l1_contraction",
    "riemann_field",
    "shift_front",
]


def primitive(u0: GridFn) -> GridFn:
    """Cumulative trapezoid integral of ``u0``, zero at the node nearest ``x = 0``."""
    if not u0.is_finite():
        raise GridError("initial datum must be finite on its grid")
    if not u0.x_min <= 0.0 <= u0.x_max:
        raise GridError(f"grid [{u0.x_min!r}, {u0.x_max!r}] does not contain 0")
    u = u0.values
    c = np.concatenate(([0.0], np.cumsum(0.5 * (u[1:] + u[:-1]) * u0.dx)))
    i0 = int(np.argmin(np.abs(u0.nodes)))
    return u0.with_values(c - c[i0])


@dataclass(frozen=True, eq=False)
class ClawProblem:
    """Fluxes ``h1, h2`` and a bounded initial datum ``u0``; ``g`` is its primitive."""

    h1: Hamiltonian
    h2: Hamiltonian
    u0: GridFn
    g: GridFn = field(init=False)
    hj: HJProblem = field(init=False, repr=False)

    def __post_init__(self):
        g = primitive(self.u0)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "hj", HJProblem(self.h1, self.h2, g))

    @property
    def sup(self):
        """``||u0||_inf``."""
        return self.u0.sup_norm()

    @property
    def dx(self):
        return self.u0.dx


@dataclass(frozen=True, eq=False)
class ClawSlice:
    t: TimePair
    u: GridFn
    y_index: np.ndarray


def lax_oleinik_eval(problem: ClawProblem, t, report) -> ClawSlice:
    """``u(t, .)`` on ``report``; at ``t = (0, 0)`` this is ``u0`` itself."""
    t = as_time_pair(t)
    s = lax_eval(problem.hj, t, report)
    if s.kernel is None:
        i0 = problem.u0.grid.offset_of(s.w.grid)
        return ClawSlice(t, problem.u0.restrict_index(i0, i0 + s.w.n - 1), s.y_index)
    return ClawSlice(t, s.w.with_values(s.u), s.y_index)


@dataclass(frozen=True, eq=False)
class ClawField:
    """``u`` and the minimiser map on ``t1 x t2 x grid``; ``y_index`` is -1 for hand-built fields.

    ``u_quantum[i, j]`` is the spacing of the values ``u`` can take at that
    time pair: the largest gap between kernel slopes inside the data range.
    Hand-built and finite-volume fields leave it ``None`` (read as zero).
    """

    problem: ClawProblem
    t1: np.ndarray
    t2: np.ndarray
    grid: Grid
    u: np.ndarray
    y_index: np.ndarray
    kernel_lip: np.ndarray
    w: np.ndarray | None = None
    u_quantum: np.ndarray | None = None

    @property
    def shape(self):
        return self.u.shape

    def times(self):
        return [TimePair(float(a), float(b)) for a in self.t1 for b in self.t2]

    def slice(self, i, j) -> GridFn:
        return GridFn(self.grid, self.u[i, j])

    def y_nodes(self):
        y = self.problem.g.nodes[np.clip(self.y_index, 0, None)]
        return np.where(self.y_index < 0, np.nan, y)

    def with_u(self, u):
        return replace(self, u=np.asarray(u, dtype=np.float64))

    def quantum(self):
        if self.u_quantum is None:
            return np.zeros((self.t1.size, self.t2.size))
        return self.u_quantum

    def u0_window(self):
        i0 = self.problem.u0.grid.offset_of(self.grid)
        return self.problem.u0.values[i0 : i0 + self.grid.n]


def lax_oleinik_field(problem: ClawProblem, t1, t2, report, jobs=1) -> ClawField:
    t1, t2, slices = _lattice(problem.hj, t1, t2, report, jobs)
    n1, n2 = t1.size, t2.size
    grid = slices[0].w.grid
    i0 = problem.u0.grid.offset_of(grid)
    u0w = problem.u0.values[i0 : i0 + grid.n]
    u = np.stack([u0w if s.kernel is None else s.u for s in slices]).reshape(n1, n2, grid.n)
    w = np.stack([s.w.values for s in slices]).reshape(n1, n2, grid.n)
    y = np.stack([s.y_index for s in slices]).reshape(n1, n2, grid.n)
    klip = np.array([np.inf if s.kernel is None else s.kernel.slope_lipschitz for s in slices]).reshape(n1, n2)
    quantum = np.array([_slope_quantum(s.kernel, problem.sup) for s in slices]).reshape(n1, n2)
    return ClawField(problem, t1, t2, grid, u, y, klip, w, quantum)


def _slope_quantum(kernel, sup):
    """Largest gap between consecutive kernel slopes that touch ``[-sup, sup]``."""
    if kernel is None:
        return 0.0
    sl = kernel.slopes
    inside = np.flatnonzero(np.abs(sl) <= sup * (1 + 1e-12))
    if inside.size == 0:
        return float(np.max(np.diff(sl))) if sl.size > 1 else 0.0
    lo, hi = max(int(inside[0]) - 1, 0), min(int(inside[-1]) + 1, sl.size - 1)
    return float(np.max(np.diff(sl[lo : hi + 1]))) if hi > lo else 0.0


# ------------------------------------------------------------------- metrics


def total_variation(values, axis=-1):
    return np.sum(np.abs(np.diff(values, axis=axis)), axis=axis)


def front_position(u: GridFn, level):
    """First ``x`` where ``u`` crosses ``level``, linearly interpolated; ``nan`` if none."""
    v = np.asarray(u.values) - level
    s = np.sign(v)
    idx = np.flatnonzero(s[:-1] * s[1:] < 0)
    zero = np.flatnonzero(v == 0)
    cands = []
    if idx.size:
        k = int(idx[0])
        x = u.nodes
        cands.append(x[k] + (x[k + 1] - x[k]) * v[k] / (v[k] - v[k + 1]))
    if zero.size:
        cands.append(u.nodes[int(zero[0])])
    return float(min(cands)) if cands else float("nan")


def data_speed(h: Hamiltonian, sup):
    """``max |H'|`` over the data range ``[-sup, sup]``."""
    return h.max_abs_deriv(-sup, sup)


def tau_weak(f: ClawField):
    """``10 (dx + dt1 + dt2)`` times the data magnitude ``||u0||_inf`` (1 when ``u0 = 0``)."""
    d1 = float(np.max(np.diff(f.t1))) if f.t1.size > 1 else 0.0
    d2 = float(np.max(np.diff(f.t2))) if f.t2.size > 1 else 0.0
    scale = f.problem.sup or 1.0
    return 10.0 * (f.grid.dx + d1 + d2) * scale


def oleinik_report(f: ClawField, tol=1e-9) -> Report:
    """One-sided Lipschitz bound and minimiser monotonicity at every time pair.

    The largest quotient ``(u(x+z) - u(x))/z`` over all node pairs is attained
    by adjacent nodes (a quotient over a longer pair is an average of adjacent
    ones), so only adjacent pairs are scanned.
    """
    rep = Report("oleinik")
    worst = -np.inf
    worst_bound = np.nan
    mono = True
    equality = np.inf
    for i in range(f.t1.size):
        for j in range(f.t2.size):
            bound = f.kernel_lip[i, j]
            if not np.isfinite(bound):
                continue
            q = float(np.max(np.diff(f.u[i, j]))) / f.grid.dx
            if q - bound > worst:
                worst, worst_bound = q - bound, bound
            equality = min(equality, abs(q - bound))
            if f.y_index[i, j, 0] >= 0:
                mono &= bool(np.all(np.diff(f.y_index[i, j]) >= 0))
    rep.add("one_sided", worst <= tol * (1 + abs(worst_bound)), worst, tol, "max(u_x quotient - bound)")
    rep.add("monotone_minimiser", mono)
    rep.metrics["min_gap_to_bound"] = equality
    return rep


def bv_report(f: ClawField, tol=1e-9) -> Report:
    """Maximum principle, total variation per slice and the discrete Radon-measure bound.

    The maximum principle allows one value quantum (see :class:`ClawField`).

    Radon bound per time axis: ``sum_x |u(t + dt) - u(t)| <= M_i TV(u) dt/dx + tol_R``
    with ``M_i = max |H_i'|`` on the data range and ``tol_R = 2 osc(u0)``: the
    node count swept by a front is only known up to two cells.
    """
    p = f.problem
    rep = Report("bv")
    sup = p.sup
    umax = float(np.max(np.abs(f.u)))
    # u only takes kernel slope values, so it may round past sup by one quantum
    q = float(np.max(f.quantum()))
    rep.metrics["u_quantum"] = q
    rep.add("max_principle", umax <= sup + q + tol, umax, sup + q + tol)
    tv = total_variation(f.u)
    tv0 = float(total_variation(f.u0_window()))
    rep.metrics["tv_max"] = float(np.max(tv))
    rep.metrics["tv_u0"] = tv0
    u0w = f.u0_window()
    d = np.diff(u0w)
    if np.all(d >= 0) or np.all(d <= 0):
        rep.add("tv_monotone", float(np.max(tv)) <= tv0 + tol, float(np.max(tv)), tv0 + tol)
    osc = float(np.ptp(u0w)) if u0w.size else 0.0
    for axis, (ts, h) in enumerate(((f.t1, p.h1), (f.t2, p.h2))):
        if ts.size < 2:
            continue
        m = data_speed(h, sup)
        du = np.sum(np.abs(np.diff(f.u, axis=axis)), axis=-1)
        tvs = np.maximum(np.delete(tv, -1, axis=axis), np.delete(tv, 0, axis=axis))
        dt = np.diff(ts).reshape((-1, 1) if axis == 0 else (1, -1))
        excess = float(np.max(du - m * tvs * dt / f.grid.dx))
        rep.add(f"radon.t{axis + 1}", excess <= 2 * osc + tol, excess, 2 * osc + tol)
    return rep


def hj_consistency(f: ClawField) -> Report:
    """``u`` against the centered x-derivative of ``w`` away from kinks of ``w``."""
    if f.w is None:
        raise ValueError("field carries no Hamilton-Jacobi values")
    dx = f.grid.dx
    rep = Report("consistency")
    worst, bound_at = -np.inf, np.nan
    for i in range(f.t1.size):
        for j in range(f.t2.size):
            klip = f.kernel_lip[i, j]
            if not np.isfinite(klip):
                continue
            w = f.w[i, j]
            jump = np.abs(w[2:] - 2 * w[1:-1] + w[:-2]) / dx
            kink = jump > 10 * dx * klip
            kink[1:] |= kink[:-1].copy()
            kink[:-1] |= kink[1:].copy()
            wx = (w[2:] - w[:-2]) / (2 * dx)
            err = np.abs(wx - f.u[i, j, 1:-1])[~kink]
            bound = 5 * dx * (1 + klip)
            if err.size and float(np.max(err)) - bound > worst:
                worst, bound_at = float(np.max(err)) - bound, bound
    rep.add("u_vs_wx", worst <= 0, worst, 0.0, f"excess over 5 dx (1 + Lip), bound={float(bound_at)!r}")
    return rep


# -------------------------------------------------------------- weak forms


def _check_support(f: ClawField, phi: TestFn):
    boxes = ((f.t1[0], f.t1[-1]), (f.t2[0], f.t2[-1]), (f.grid.x_min, f.grid.x_max))
    for axis, ((lo, hi), (a, b)) in enumerate(zip(phi.support(), boxes)):
        if lo < a or hi > b:
            raise ValueError(f"test function support exits the lattice on axis {axis}: [{lo}, {hi}] vs [{a}, {b}]")


def _support_slices(f: ClawField, phi):
    """Index ranges covering the support of ``phi`` plus one node either side."""
    out = []
    for (lo, hi), ax in zip(phi.support(), (f.t1, f.t2, f.grid.nodes)):
        a = max(int(np.searchsorted(ax, lo, side="right")) - 1, 0)
        b = min(int(np.searchsorted(ax, hi, side="left")) + 1, ax.size - 1)
        out.append(slice(a, b + 1))
    return tuple(out)


def _edge_pairing(axes, v, phi, axis):
    """``iiint v phi_axis`` as sum over edges of ``(phi[k+1] - phi[k]) * mean(v[k], v[k+1])``.

    ``phi`` vanishes at both ends of the sub-lattice, so the edge sum
    telescopes to zero for constant ``v``: constants pair to zero exactly
    however few nodes the support spans. The other two axes use the trapezoid rule.
    """
    n = v.shape[axis]
    lo = [slice(None)] * 3
    hi = [slice(None)] * 3
    lo[axis], hi[axis] = slice(0, n - 1), slice(1, n)
    lo, hi = tuple(lo), tuple(hi)
    s = np.sum((phi[hi] - phi[lo]) * 0.5 * (v[hi] + v[lo]), axis=axis)
    rest = [a for k, a in enumerate(axes) if k != axis]
    s = trapezoid(s, rest[1], axis=1) if rest[1].size > 1 else s[:, 0]
    return float(trapezoid(s, rest[0], axis=0) if rest[0].size > 1 else s[0])


def _local(f: ClawField, phi):
    """Sub-lattice axes, ``u`` and ``phi`` values on the support of ``phi`` plus one node either side."""
    _check_support(f, phi)
    sl = _support_slices(f, phi)
    axes = (f.t1[sl[0]], f.t2[sl[1]], f.grid.nodes[sl[2]])
    T1, T2, X = np.meshgrid(*axes, indexing="ij")
    return axes, f.u[sl], phi(T1, T2, X)


def _pairing(axes, dens, flux, phi, which):
    """``iiint dens phi_{t_which} + flux phi_x`` in the edge form of :func:`_edge_pairing`."""
    return _edge_pairing(axes, dens, phi, which - 1) + _edge_pairing(axes, flux, phi, 2)


def weak_residual(f: ClawField, bumps, which, tau=None) -> Report:
    """``I = iiint u phi_{t_which} + H_which(u) phi_x`` for each bump.

    The check compares ``|I| / ||phi||_L1`` with :func:`tau_weak`. The raw
    integral is kept in the metrics.
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    h = f.problem.h1 if which == 1 else f.problem.h2
    tau = tau_weak(f) if tau is None else tau
    rep = Report(f"weak.h{which}")
    for b, phi in enumerate(bumps):
        axes, u, pv = _local(f, phi)
        val = _pairing(axes, u, h.eval(u), pv, which)
        norm = phi.l1_norm
        rep.add(f"bump{b}", abs(val) / norm <= tau, abs(val) / norm, tau)
        rep.metrics[f"bump{b}.I"] = val
    return rep


def entropy_residual(f: ClawField, pairs, bumps, which, tau=None) -> Report:
    """``E = iiint eta(u) phi_{t_which} + q_which(u) phi_x``; each pair needs ``E / ||phi||_L1 >= -tau_weak``."""
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    for phi in bumps:
        if getattr(phi, "amplitude", 1.0) < 0:
            raise ValueError("entropy test functions must be nonnegative")
    local = [(_local(f, phi), phi.l1_norm) for phi in bumps]
    tau = tau_weak(f) if tau is None else tau
    rep = Report(f"entropy.h{which}")
    for k, pair in enumerate(pairs):
        q = pair.q(which)
        worst = np.inf
        for (axes, u, pv), norm in local:
            worst = min(worst, _pairing(axes, pair.eta(u), q(u), pv, which) / norm)
        rep.add(f"pair{k}", worst >= -tau, worst, -tau, pair.name)
    return rep


def _diagonal_pairs(f: ClawField):
    out = []
    for i, a in enumerate(f.t1):
        js = np.flatnonzero(f.t2 == a)
        if js.size and a > 0:
            out.append((i, int(js[0])))
    return sorted(out, key=lambda ij: -f.t1[ij[0]])


def initial_trace(f: ClawField, ratio_tol=0.25, fit=3) -> Report:
    """``int |u(h, h, .) - u0| dx`` on the window along the diagonal ``t1 = t2 = h``.

    Checks that it decreases as ``h`` does, that every diagonal time meets
    the first-order bound ``tau_init(h) = (M1 + M2) h TV(u0) + 2 dx ||u0||``
    (``limit`` is the smallest ``h``, ``linear`` the worst excess over all)
    and that ``C = I / h`` is stable over the ``fit`` smallest ``h``:
    ``max C / min C <= 1 + ratio_tol``. Larger ``h`` are left out of the fit
    because smooth data steepening into shocks bend ``I`` below linear.
    """
    pairs = _diagonal_pairs(f)
    if len(pairs) < 2:
        raise ValueError("initial_trace needs at least two diagonal time pairs t1 = t2 > 0")
    p = f.problem
    u0 = f.u0_window()
    x = f.grid.nodes
    hs = np.array([f.t1[i] for i, _ in pairs])
    vals = np.array([trapezoid(np.abs(f.u[i, j] - u0), x) for i, j in pairs])
    rep = Report("initial_trace")
    rep.add("decreasing", bool(np.all(np.diff(vals) <= 1e-12)))
    m1, m2 = data_speed(p.h1, p.sup), data_speed(p.h2, p.sup)
    taus = (m1 + m2) * hs * float(total_variation(u0)) + 2 * f.grid.dx * p.sup
    excess = vals - taus
    k = int(np.argmax(excess))
    rep.add("linear", excess[k] <= 0, float(excess[k]), 0.0, f"h={float(hs[k])!r}")
    rep.add("limit", vals[-1] <= taus[-1], vals[-1], taus[-1], f"h={float(hs[-1])!r}")
    for hk, v in zip(hs, vals):
        rep.metrics[f"I[h={float(hk)!r}]"] = v
    # integrals at rounding level count as zero, or their ratio is noise
    floor = 1e-12 * (p.sup or 1.0) * (x[-1] - x[0])
    c = np.where(vals <= floor, 0.0, vals / hs)[-fit:]
    ratio = float(np.max(c) / np.min(c)) if np.min(c) > 0 else (1.0 if np.max(c) == 0 else np.inf)
    rep.add("ratio", ratio <= 1 + ratio_tol, ratio, 1 + ratio_tol, f"h<={float(hs[-c.size])!r}")
    rep.metrics["C_mean"] = float(np.mean(c))
    return rep


@dataclass(frozen=True)
class Bump1D:
    """Cut-off ``bump((t - center) / radius)`` in one time variable."""

    center: float
    radius: float

    def __call__(self, t):
        from mtcl.testfunctions import bump

        return bump((np.asarray(t, dtype=np.float64) - self.center) / self.radius)


def l1_contraction(fa: ClawField, fb: ClawField, zeta, axis, radius, center=0.0) -> Report:
    """Time-integrated L1 distance on a ball against the distance on the edge of the other axis.

    For ``axis=1`` and every lattice ``t2 > 0``::

        iint_{B_R} |u - v|(tau, t2, x) zeta(tau)  <=  iint_{B_{R + M2 t2}} |u - v|(tau, 0, x) zeta(tau)

    with ``M2 = max |H2'|`` on the data range (symmetrically for ``axis=2``).
    The lattice must contain ``0`` on the other axis and the report window
    must contain the largest ball. The check value is the slack
    ``rhs - lhs``; it must be ``>= -dx ||u0||_inf int zeta``, one cell of
    misplaced front per unit of cut-off mass.
    """
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis!r}")
    pa, pb = fa.problem, fb.problem
    if not (pa.h1 == pb.h1 and pa.h2 == pb.h2):
        raise ValueError("contraction needs fields with the same Hamiltonians")
    if not (
        np.array_equal(fa.t1, fb.t1) and np.array_equal(fa.t2, fb.t2) and fa.grid == fb.grid
    ):
        raise ValueError("contraction needs fields on the same lattice")
    tz, to = (fa.t1, fa.t2) if axis == 1 else (fa.t2, fa.t1)
    if zeta(tz[0]) != 0 or zeta(tz[-1]) != 0:
        raise ValueError("cut-off must vanish at both ends of the integrated time axis")
    zero = np.flatnonzero(to == 0)
    if not zero.size:
        raise ValueError("lattice must contain time 0 on the non-integrated axis")
    j0 = int(zero[0])
    sup = max(pa.sup, pb.sup)
    m = data_speed(pa.h2 if axis == 1 else pa.h1, sup)
    diff = np.abs(fa.u - fb.u)
    if axis == 2:
        diff = diff.transpose(1, 0, 2)  # integrated axis first
    x = fa.grid.nodes
    dx = fa.grid.dx
    zw = zeta(tz)
    mass = float(trapezoid(zw, tz))
    tol = dx * (sup or 1.0) * mass

    def integral(j, r):
        lo, hi = center - r, center + r
        if lo < x[0] - 1e-12 or hi > x[-1] + 1e-12:
            raise GridError(f"ball [{lo}, {hi}] exceeds the report window [{x[0]}, {x[-1]}]")
        sel = (x >= lo - 1e-9 * dx) & (x <= hi + 1e-9 * dx)
        inner = trapezoid(diff[:, j, sel], x[sel], axis=1)
        return float(trapezoid(inner * zw, tz))

    rep = Report(f"contraction.axis{axis}")
    for j, s in enumerate(to):
        if j == j0:
            continue
        lhs = integral(j, radius)
        rhs = integral(j0, radius + m * s)
        rep.add(f"t={float(s)!r}", rhs - lhs >= -tol, rhs - lhs, -tol)
        rep.metrics[f"t={float(s)!r}.lhs"] = lhs
        rep.metrics[f"t={float(s)!r}.rhs"] = rhs
    return rep


# -------------------------------------------------------- constructed fields


def riemann_field(problem: ClawProblem, u_left, u_right, t1, t2, grid: Grid, x0=0.0) -> ClawField:
    """Single discontinuity from ``u_left`` to ``u_right`` moving at the Rankine-Hugoniot speeds.

    With ``u_left < u_right`` and convex fluxes this is the non-entropic
    expansion shock, a weak solution that violates the entropy inequalities.
    """
    t1, t2 = _time_axis(t1), _time_axis(t2)
    du = u_left - u_right
    if du == 0:
        s1 = s2 = 0.0
    else:
        s1 = float(problem.h1.eval(u_left) - problem.h1.eval(u_right)) / du
        s2 = float(problem.h2.eval(u_left) - problem.h2.eval(u_right)) / du
    T1, T2, X = np.meshgrid(t1, t2, grid.nodes, indexing="ij")
    front = x0 + s1 * T1 + s2 * T2
    u = np.where(X <= front, float(u_left), float(u_right))
    y = np.full(u.shape, -1, dtype=np.int64)
    klip = np.full((t1.size, t2.size), np.nan)
    return ClawField(problem, t1, t2, grid, u, y, klip)


def shift_front(f: ClawField, nodes, min_total_time):
    """Translate ``u`` right by ``nodes`` cells on slices with ``t1 + t2 >= min_total_time``.

    A shock translated at all times is still a weak solution; shifting only
    the later slices makes the front jump in time and breaks the weak form.
    """
    u = f.u.copy()
    for i, a in enumerate(f.t1):
        for j, b in enumerate(f.t2):
            if a + b >= min_total_time:
                row = u[i, j]
                u[i, j] = np.concatenate((np.full(nodes, row[0]), row[: row.size - nodes]))
    return f.with_u(u)
