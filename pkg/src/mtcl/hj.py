"""
Two-time Hamilton-Jacobi system ``w_{t_i} + H_i(w_x) = 0``, ``w(0, 0, .) = g``.

The solution is built from the Lax formula

    w(t1, t2, x) = min_y (t1 H1 + t2 H2)^*(x - y) + g(y)

evaluated exactly over grid nodes: the kernel ``(t.H)^*`` is sampled on the
offsets ``z = j * dx, |j| <= J`` and the minimum is an inf-convolution on the
grid of ``g``. ``J`` is chosen from ``Lip(g)``: at a minimiser the kernel
slope ``((t.H)^*)'(z)`` is a subgradient of ``g``, so ``|z|`` never exceeds
``max |(t.H)'(+-Lip g)|``. The report window must leave ``J`` nodes of ``g``
on either side, and a minimiser that still lands on the edge of the stencil
raises :class:`~mtcl.errors.TruncationError`.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from mtcl.convex import conjugate, default_dual_grid, inf_conv_direct
from mtcl.errors import ConvexityError, GridError, TruncationError
from mtcl.grid import Grid, GridFn, TimePair, as_time_pair
from mtcl.hamiltonians import Hamiltonian, Zero, check_coercive, check_convex, combine, scale
from mtcl.report import Report

__all__ = [
    "HJProblem",
    "LaxKernel",
    "LaxSlice",
    "HJField",
    "lax_kernel",
    "lax_apply",
    "lax_eval",
    "lax_single",
    "lax_field",
    "hopf_eval",
    "tau_semigroup",
    "semigroup_check",
    "commutation_check",
    "lipschitz_report",
    "PDEResidual",
    "pde_residual",
    "residual_report",
    "viscosity_check",
]

_H0_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class HJProblem:
    """Hamiltonians and a finite Lipschitz initial datum ``g``."""

    h1: Hamiltonian
    h2: Hamiltonian
    g: GridFn
    lip_g: float = field(init=False)

    def __post_init__(self):
        if not self.g.is_finite():
            raise GridError("initial datum must be finite on its grid")
        lip = self.g.lipschitz()
        object.__setattr__(self, "lip_g", lip)
        p_max = max(1.0, 2.0 * lip)
        probe = Grid(-p_max, p_max, 401)
        for name, h in (("h1", self.h1), ("h2", self.h2)):
            h0 = float(h.eval(0.0))
            if abs(h0) > _H0_TOL:
                raise ValueError(f"{name} must satisfy H(0) = 0, got {h0!r}")
            if not _convex_on(h, probe):
                raise ConvexityError(f"{name} is not convex")
            if not check_coercive(h, lip, 4.0 * p_max):
                raise ValueError(f"{name} is not coercive enough for Lip(g)={lip!r}")

    @property
    def dx(self):
        return self.g.dx

    def with_g(self, g):
        return HJProblem(self.h1, self.h2, g)

    def hamiltonian(self, t) -> Hamiltonian:
        return combine(self.h1, self.h2, t)


def _convex_on(h, grid):
    with np.errstate(over="ignore", invalid="ignore"):
        v = np.asarray(h.eval(grid.nodes), dtype=np.float64)
    if np.isfinite(v).all():
        return check_convex(h, grid)
    # tabulated Hamiltonians are +inf off their table
    return GridFn(grid, v).is_convex()


# --------------------------------------------------------------------- kernel


@dataclass(frozen=True, eq=False)
class LaxKernel:
    """``(t.H)^*`` on offsets ``j*dx``, ``|j| <= half_width``, with a monotone derivative selection."""

    hamiltonian: Hamiltonian
    values: GridFn
    slopes: np.ndarray
    half_width: int

    @property
    def slope_lipschitz(self):
        """Largest difference quotient of ``slopes``: the one-sided Lipschitz bound for ``u``."""
        d = np.diff(self.slopes) / self.values.dx
        return float(np.max(d)) if d.size else 0.0


def _half_width(h: Hamiltonian, lip, dx):
    r = max(abs(float(h.deriv(-lip))), abs(float(h.deriv(lip))))
    return int(math.ceil(r / dx)) + 2


def _numeric_kernel(h: Hamiltonian, z: Grid, J, dx):
    reach = J * dx
    P = 1.0
    for _ in range(200):
        with np.errstate(over="ignore", invalid="ignore"):
            finite = np.isfinite(h.eval(P)) and np.isfinite(h.eval(-P))
        if not finite:
            break
        if float(h.deriv(P)) >= reach and -float(h.deriv(-P)) >= reach:
            break
        P *= 2.0
    m = max(2001, 4 * z.n + 1)
    pg = Grid(-P, P, m)
    with np.errstate(over="ignore", invalid="ignore"):
        hv = np.asarray(h.eval(pg.nodes), dtype=np.float64)
    res = conjugate(GridFn(pg, hv), z)
    return res.fstar.values, res.slopes(pg)


_kernel_cache: dict = {}
_kernel_lock = threading.Lock()


def lax_kernel(h: Hamiltonian, dx, lip) -> LaxKernel:
    """Kernel for ``min_y h^*(x - y) + g(y)`` with ``Lip(g) = lip`` on a grid of spacing ``dx``."""
    if isinstance(h, Zero):
        raise ValueError("the kernel of the zero Hamiltonian is an indicator; handle t = (0, 0) separately")
    key = (h, float(dx), float(lip))
    with _kernel_lock:
        hit = _kernel_cache.get(key)
    if hit is not None:
        return hit
    J = _half_width(h, lip, dx)
    z = Grid(-J * dx, J * dx, 2 * J + 1)
    zn = np.arange(-J, J + 1) * dx
    if h.closed_form_conjugate:
        values = np.asarray(h.conjugate(zn), dtype=np.float64)
        slopes = np.asarray(h.conjugate_deriv(zn), dtype=np.float64)
    else:
        values, slopes = _numeric_kernel(h, z, J, dx)
    kern = LaxKernel(h, GridFn(z, values), slopes, J)
    with _kernel_lock:
        _kernel_cache[key] = kern
    return kern


# ------------------------------------------------------------------ evaluation


@dataclass(frozen=True, eq=False)
class LaxSlice:
    """One time slice: values, minimiser ``y`` (index into the data grid) and kernel offset index."""

    t: TimePair
    w: GridFn
    y_index: np.ndarray
    z_index: np.ndarray
    kernel: LaxKernel | None

    @property
    def u(self):
        """Lax-Oleinik value ``((t.H)^*)'(x - y)``; ``None`` at ``t = (0, 0)``."""
        if self.kernel is None:
            return None
        return self.kernel.slopes[self.z_index]


def _report_indices(data_grid: Grid, report):
    if report is None:
        raise ValueError("a report grid or window is required")
    if isinstance(report, Grid):
        i0 = data_grid.offset_of(report)
        i1 = i0 + report.n - 1
        if i0 < 0 or i1 > data_grid.n - 1:
            raise GridError(f"report grid {report} exceeds the data grid {data_grid}")
        return i0, i1
    a, b = report
    return data_grid.index_window(a, b)


def lax_apply(h: Hamiltonian, data: GridFn, lip, report, t=(0.0, 0.0)) -> LaxSlice:
    """``min_y h^*(x - y) + data(y)`` on the report window, with truncation checks.

    Args:
        h: the combined Hamiltonian ``t.H``.
        data: finite datum; only its nodes are candidate minimisers.
        lip: Lipschitz bound of ``data`` used to size the stencil.
        report: :class:`Grid` commensurate with ``data`` or a ``(a, b)`` window.
        t: time pair recorded on the slice.

    Raises:
        TruncationError: the window is closer than the stencil half-width to
            the edge of ``data``'s grid, or a minimiser sits on the stencil edge.
    """
    t = as_time_pair(t)
    i0, i1 = _report_indices(data.grid, report)
    out = data.grid.subgrid(i0, i1)
    if isinstance(h, Zero):
        idx = np.arange(i0, i1 + 1, dtype=np.int64)
        return LaxSlice(t, data.restrict_index(i0, i1), idx, np.zeros_like(idx), None)
    kern = lax_kernel(h, data.dx, lip)
    J = kern.half_width
    if i0 - J < 0 or i1 + J > data.n - 1:
        raise TruncationError(
            f"truncation violated: window [{out.x_min!r}, {out.x_max!r}] needs {J} padding nodes "
            f"({J * data.dx!r} in x) inside [{data.x_min!r}, {data.x_max!r}]"
        )
    w, y = inf_conv_direct(kern.values, data, out=out)
    z_index = (np.arange(i0, i1 + 1) - y) + J
    if np.any(z_index <= 0) or np.any(z_index >= 2 * J):
        k = int(np.flatnonzero((z_index <= 0) | (z_index >= 2 * J))[0])
        raise TruncationError(f"truncation violated: minimiser on the stencil edge at x={out.nodes[k]!r}")
    return LaxSlice(t, w, y, z_index.astype(np.int64), kern)


def lax_eval(problem: HJProblem, t, report) -> LaxSlice:
    """``w(t, .)`` on ``report`` by the two-time Lax formula; ``t = (0, 0)`` returns ``g``."""
    t = as_time_pair(t)
    return lax_apply(problem.hamiltonian(t), problem.g, problem.lip_g, report, t)


def lax_single(h: Hamiltonian, t, g: GridFn, report) -> LaxSlice:
    """Single-time Lax formula ``min_y (t H)^*(x - y) + g(y)``."""
    return lax_apply(scale(h, t), g, g.lipschitz(), report, (t, 0.0))


@dataclass(frozen=True, eq=False)
class HJField:
    """``w`` and the minimiser map on the lattice ``t1 x t2 x grid``."""

    problem: HJProblem
    t1: np.ndarray
    t2: np.ndarray
    grid: Grid
    w: np.ndarray
    y_index: np.ndarray
    kernel_lip: np.ndarray

    @property
    def shape(self):
        return self.w.shape

    def times(self):
        return [TimePair(float(a), float(b)) for a in self.t1 for b in self.t2]

    def slice(self, i, j) -> GridFn:
        return GridFn(self.grid, self.w[i, j])

    def y_nodes(self):
        return self.problem.g.nodes[self.y_index]

    def with_w(self, w):
        """Copy with replaced values (negative controls)."""
        return replace(self, w=np.asarray(w, dtype=np.float64))


def _time_axis(ts):
    ts = np.asarray(ts, dtype=np.float64).ravel()
    if ts.size == 0:
        raise ValueError("time axis is empty")
    if np.any(~np.isfinite(ts)) or np.any(ts < 0):
        raise ValueError("times must be nonnegative")
    if np.any(np.diff(ts) <= 0):
        raise ValueError("time axis must be strictly increasing")
    return ts


def _map(fn, items, jobs):
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _lattice(problem, t1, t2, report, jobs):
    """Evaluate every lattice slice, sharing work between pairs with equal ``t.H``."""
    t1, t2 = _time_axis(t1), _time_axis(t2)
    pairs = [(a, b) for a in t1 for b in t2]
    keys = [problem.hamiltonian((a, b)) for a, b in pairs]
    unique = {}
    for k, p in zip(keys, pairs):
        unique.setdefault(k, p)
    reps = list(unique.items())
    done = _map(lambda kp: lax_eval(problem, kp[1], report), reps, jobs)
    by_key = {k: s for (k, _), s in zip(reps, done)}
    slices = [by_key[k] for k in keys]
    return t1, t2, slices


def lax_field(problem: HJProblem, t1, t2, report, jobs=1) -> HJField:
    """Lax solution on the lattice ``t1 x t2`` (each strictly increasing) over ``report``."""
    t1, t2, slices = _lattice(problem, t1, t2, report, jobs)
    n1, n2 = t1.size, t2.size
    grid = slices[0].w.grid
    w = np.stack([s.w.values for s in slices]).reshape(n1, n2, grid.n)
    y = np.stack([s.y_index for s in slices]).reshape(n1, n2, grid.n)
    klip = np.array([np.inf if s.kernel is None else s.kernel.slope_lipschitz for s in slices]).reshape(n1, n2)
    return HJField(problem, t1, t2, grid, w, y, klip)


def hopf_eval(problem: HJProblem, t, report) -> GridFn:
    """``(t.H + g^*)^*`` on ``report`` (a :class:`Grid` or window); needs convex ``g``."""
    if not problem.g.is_convex():
        raise ConvexityError("Hopf formula requires convex initial datum")
    t = as_time_pair(t)
    g = problem.g
    if not isinstance(report, Grid):
        i0, i1 = _report_indices(g.grid, report)
        report = g.grid.subgrid(i0, i1)
    gs = conjugate(g, default_dual_grid(g)).fstar
    h = problem.hamiltonian(t)
    s = gs.with_values(gs.values + np.asarray(h.eval(gs.nodes), dtype=np.float64))
    return conjugate(s, report).fstar


# ---------------------------------------------------------------- verification


def tau_semigroup(problem: HJProblem):
    """``tau_dual + 2 (1 + Lip g) dx`` with ``tau_dual = 5 dx (1 + Lip g)``."""
    dx, lip = problem.dx, problem.lip_g
    return 5.0 * dx * (1.0 + lip) + 2.0 * (1.0 + lip) * dx


def _extend(grid: Grid, J):
    return Grid.from_spacing(grid.x_min - J * grid.dx, grid.dx, grid.n + 2 * J)


def _report_grid(problem, report):
    if isinstance(report, Grid):
        return report
    i0, i1 = _report_indices(problem.g.grid, report)
    return problem.g.grid.subgrid(i0, i1)


def semigroup_check(problem: HJProblem, s, t, report, tol=None) -> Report:
    """Compare ``w(t)`` with ``S((t - s).H) w(s)``, the Lax formula restarted at time ``s``.

    ``tol`` defaults to :func:`tau_semigroup`.
    """
    s, t = as_time_pair(s), as_time_pair(t)
    d = t - s
    if d.t1 < 0 or d.t2 < 0:
        raise ValueError(f"semigroup split needs s <= t componentwise, got s={tuple(s)}, t={tuple(t)}")
    out = _report_grid(problem, report)
    direct = lax_eval(problem, t, out).w
    hd = problem.hamiltonian(d)
    J = 0 if isinstance(hd, Zero) else lax_kernel(hd, problem.dx, problem.lip_g).half_width
    ws = lax_eval(problem, s, _extend(out, J)).w
    two_step = lax_apply(hd, ws, problem.lip_g, out, t).w
    gap = float(np.max(np.abs(direct.values - two_step.values)))
    tau = tau_semigroup(problem) if tol is None else tol
    rep = Report("semigroup")
    rep.add("gap", gap <= tau, gap, tau, f"s=({s.t1!r}, {s.t2!r}) t=({t.t1!r}, {t.t2!r})")
    return rep


def _compose(problem, first, second, out):
    """``S(second) S(first) g`` on ``out``; each argument is a single-axis Hamiltonian times time."""
    J = 0 if isinstance(second, Zero) else lax_kernel(second, problem.dx, problem.lip_g).half_width
    mid = lax_apply(first, problem.g, problem.lip_g, _extend(out, J)).w
    return lax_apply(second, mid, problem.lip_g, out).w


def commutation_check(problem: HJProblem, t, report, tol=None) -> Report:
    """``S_H1(t1) S_H2(t2) g`` vs ``S_H2(t2) S_H1(t1) g`` vs the direct two-time formula."""
    t = as_time_pair(t)
    out = _report_grid(problem, report)
    a1, a2 = scale(problem.h1, t.t1), scale(problem.h2, t.t2)
    w12 = _compose(problem, a2, a1, out).values  # H2 first, then H1
    w21 = _compose(problem, a1, a2, out).values
    direct = lax_eval(problem, t, out).w.values
    tau = tau_semigroup(problem) if tol is None else tol
    rep = Report("commutation")
    g_orders = float(np.max(np.abs(w12 - w21)))
    g_direct = float(max(np.max(np.abs(w12 - direct)), np.max(np.abs(w21 - direct))))
    rep.add("orders", g_orders <= tau, g_orders, tau, f"t=({t.t1!r}, {t.t2!r})")
    rep.add("direct", g_direct <= tau, g_direct, tau, f"t=({t.t1!r}, {t.t2!r})")
    return rep


def _time_constant(problem):
    lip = problem.lip_g
    c = 0.0
    for h in (problem.h1, problem.h2):
        c = max(c, h.max_on_ball(lip), abs(h.minimum()))
    return c


def lipschitz_report(f: HJField, tol=1e-6) -> Report:
    """Spatial Lipschitz bound, two-sided initial-data sandwich and time Lipschitz bound."""
    p = f.problem
    rep = Report("lipschitz")
    dx = f.grid.dx
    slopes = np.abs(np.diff(f.w, axis=2)) / dx
    lip_w = float(np.max(slopes))
    rep.add("space", lip_w <= p.lip_g + tol, lip_w, p.lip_g + tol)

    i0 = p.g.grid.offset_of(f.grid)
    gw = p.g.values[i0 : i0 + f.grid.n]
    worst_lo = worst_hi = -np.inf
    for i, a in enumerate(f.t1):
        for j, b in enumerate(f.t2):
            h = p.hamiltonian((a, b))
            lo, hi = h.minimum(), h.max_on_ball(p.lip_g)
            diff = gw - f.w[i, j]
            worst_lo = max(worst_lo, float(np.max(lo - diff)))
            worst_hi = max(worst_hi, float(np.max(diff - hi)))
    viol = max(worst_lo, worst_hi)
    rep.add("sandwich", viol <= tol, viol, tol, "max violation of inf tH <= g - w <= max_{|p|<=Lip g} tH")

    c_h = _time_constant(p)
    tol_t = tol + tau_semigroup(p)
    worst = -np.inf
    for axis, ts in ((0, f.t1), (1, f.t2)):
        if ts.size < 2:
            continue
        dw = np.abs(np.diff(f.w, axis=axis))
        dt = np.diff(ts).reshape((-1, 1, 1) if axis == 0 else (1, -1, 1))
        worst = max(worst, float(np.max(dw - c_h * dt)))
    if np.isfinite(worst):
        rep.add("time", worst <= tol_t, worst, tol_t, f"C_H={c_h!r}")
    rep.metrics["lip_g"] = p.lip_g
    rep.metrics["C_H"] = c_h
    return rep


@dataclass(frozen=True, eq=False)
class PDEResidual:
    """Centered-difference residual of one equation; ``nan`` on edges and masked kink nodes."""

    which: int
    residual: np.ndarray
    mask: np.ndarray
    max_residual: float
    masked_fraction: float


def pde_residual(f: HJField, which) -> PDEResidual:
    """Residual ``D_{t_which} w + H_which(D_x w)`` at interior lattice nodes.

    A node is treated as a kink when the jump of one-sided slopes
    ``(w[k+1] - 2 w[k] + w[k-1]) / dx`` exceeds ``10 dx Lip(((t.H)^*)')`` at
    it, at a spatial neighbour, or at a neighbouring time on the
    differenced axis; kinks are excluded from the maximum.
    """
    if which not in (1, 2):
        raise ValueError(f"which must be 1 or 2, got {which!r}")
    n1, n2, nx = f.w.shape
    if n1 < 3 or n2 < 3 or nx < 3:
        raise ValueError(f"pde_residual needs at least 3 samples per axis, lattice is {f.w.shape}")
    h = f.problem.h1 if which == 1 else f.problem.h2
    w, dx = f.w, f.grid.dx
    axis = which - 1
    ts = f.t1 if which == 1 else f.t2

    inner = (slice(1, -1), slice(1, -1), slice(1, -1))
    wx = (w[:, :, 2:] - w[:, :, :-2]) / (2 * dx)
    span = (ts[2:] - ts[:-2]).reshape((-1, 1, 1) if axis == 0 else (1, -1, 1))
    if axis == 0:
        wt = (w[2:, 1:-1, 1:-1] - w[:-2, 1:-1, 1:-1]) / span
    else:
        wt = (w[1:-1, 2:, 1:-1] - w[1:-1, :-2, 1:-1]) / span
    r = np.abs(wt + h.eval(wx[1:-1, 1:-1, :]))

    jump = np.full(w.shape, 0.0)
    jump[:, :, 1:-1] = np.abs(w[:, :, 2:] - 2 * w[:, :, 1:-1] + w[:, :, :-2]) / dx
    kappa = 10.0 * dx * f.kernel_lip[:, :, None]
    kink = jump > kappa
    dil = kink.copy()
    dil[:, :, 1:] |= kink[:, :, :-1]
    dil[:, :, :-1] |= kink[:, :, 1:]
    spread = dil.copy()
    if axis == 0:
        spread[1:] |= dil[:-1]
        spread[:-1] |= dil[1:]
    else:
        spread[:, 1:] |= dil[:, :-1]
        spread[:, :-1] |= dil[:, 1:]
    mask = spread[inner]

    full = np.full(w.shape, np.nan)
    kept = np.where(mask, np.nan, r)
    full[inner] = kept
    finite = kept[~mask]
    max_r = float(np.max(finite)) if finite.size else 0.0
    return PDEResidual(which, full, mask, max_r, float(np.mean(mask)))


def residual_report(f: HJField, bound=None, max_masked=0.05) -> Report:
    """Both equations: masked residual ``<= bound`` (default ``5 (dt + dx)``) and masked fraction."""
    dt = max(float(np.max(np.diff(f.t1))), float(np.max(np.diff(f.t2))))
    if bound is None:
        bound = 5.0 * (dt + f.grid.dx)
    rep = Report("residual")
    for which in (1, 2):
        res = pde_residual(f, which)
        rep.add(f"h{which}.max", res.max_residual <= bound, res.max_residual, bound)
        rep.add(f"h{which}.masked", res.masked_fraction < max_masked, res.masked_fraction, max_masked)
    return rep


def _neighbour_extrema(d):
    """Interior nodes strictly above (``mx``) or below (``mn``) all six lattice neighbours."""
    c = d[1:-1, 1:-1, 1:-1]
    nbrs = (
        d[:-2, 1:-1, 1:-1],
        d[2:, 1:-1, 1:-1],
        d[1:-1, :-2, 1:-1],
        d[1:-1, 2:, 1:-1],
        d[1:-1, 1:-1, :-2],
        d[1:-1, 1:-1, 2:],
    )
    mx = np.ones(c.shape, dtype=bool)
    mn = np.ones(c.shape, dtype=bool)
    for nb in nbrs:
        mx &= c > nb
        mn &= c < nb
    return mx, mn


def viscosity_check(f: HJField, bumps, tol=None) -> Report:
    """Sub/supersolution inequalities at lattice-local extrema of ``w - phi``.

    Each ``phi`` exposes ``value(t1, t2, x)`` and ``grad(t1, t2, x) ->
    (d/dt1, d/dt2, d/dx)``. At a strict local maximum both
    ``phi_{t_i} + H_i(phi_x) <= tol`` must hold; at a strict local minimum
    both must be ``>= -tol``. The default ``tol`` is
    ``5 (dt1 + dt2 + dx) (1 + max |D phi|)``.
    """
    T1, T2, X = np.meshgrid(f.t1, f.t2, f.grid.nodes, indexing="ij")
    hs = (f.problem.h1, f.problem.h2)
    rep = Report("viscosity")
    steps = [float(np.max(np.diff(ax))) if ax.size > 1 else 0.0 for ax in (f.t1, f.t2)]
    checked = 0
    for b, phi in enumerate(bumps):
        d = f.w - np.asarray(phi.value(T1, T2, X), dtype=np.float64)
        if min(d.shape) < 3:
            raise ValueError("viscosity_check needs at least 3 samples per axis")
        g1, g2, gx = (np.broadcast_to(np.asarray(v, dtype=np.float64), d.shape) for v in phi.grad(T1, T2, X))
        tol_b = tol
        if tol_b is None:
            dmax = max(float(np.max(np.abs(v))) for v in (g1, g2, gx))
            tol_b = 5.0 * (steps[0] + steps[1] + f.grid.dx) * (1.0 + dmax)
        mx, mn = _neighbour_extrema(d)
        inner = (slice(1, -1),) * 3
        worst_sub, worst_sup = -np.inf, -np.inf
        for gt, h in ((g1, hs[0]), (g2, hs[1])):
            val = gt[inner] + h.eval(gx[inner])
            if mx.any():
                worst_sub = max(worst_sub, float(np.max(val[mx])))
            if mn.any():
                worst_sup = max(worst_sup, float(np.max(-val[mn])))
        n_ext = int(mx.sum() + mn.sum())
        checked += n_ext
        worst = max(worst_sub, worst_sup)
        if n_ext == 0:
            rep.add(f"bump{b}", True, detail="no strict extrema")
        else:
            rep.add(f"bump{b}", worst <= tol_b, worst, tol_b, f"{int(mx.sum())} max, {int(mn.sum())} min")
    rep.metrics["extrema"] = checked
    return rep
