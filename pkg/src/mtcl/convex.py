"""
Discrete convex analysis on uniform grids.

All operations act on :class:`~mtcl.grid.GridFn` and treat a function as
``+inf`` off its grid. Ties in every argmax/argmin are broken towards the
smallest index, which makes results deterministic and lets the fast
routines be compared bit-for-bit against the brute-force ones kept here as
oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mtcl.errors import ConvexityError, GridError, ImproperFunctionError
from mtcl.grid import Grid, GridFn

__all__ = [
    "ConjugateResult",
    "default_dual_grid",
    "lower_hull",
    "conjugate",
    "conjugate_bruteforce",
    "biconjugate",
    "convex_envelope_bruteforce",
    "inf_conv_direct",
    "inf_conv_bruteforce",
    "inf_conv_dual",
    "moreau_yosida",
    "tau_dual",
]

_SWEEPS = 8
_CHUNK = 1 << 22  # max matrix entries materialised at once by the O(n^2) oracles


@dataclass(frozen=True)
class ConjugateResult:
    """Conjugate values on a dual grid and, per dual node, the maximising primal index."""

    fstar: GridFn
    argmax: np.ndarray

    def slopes(self, primal: Grid):
        """Primal abscissae of the maximisers: a monotone subgradient selection of ``fstar``."""
        return primal.nodes[self.argmax]


def _require_proper(f: GridFn):
    if not f.finite.any():
        raise ImproperFunctionError("improper function")


def default_dual_grid(f: GridFn, n=None) -> Grid:
    """``[-L, L]`` with ``L`` the largest adjacent slope of ``f``; ``n`` defaults to ``f.n``."""
    L = f.lipschitz()
    if L == 0.0:
        L = 1.0
    return Grid(-L, L, f.n if n is None else n)


def lower_hull(x, y):
    """Indices of the lower convex hull vertices of the points ``(x_i, y_i)``, ``x`` increasing.

    A point is removed when the slope into it exceeds the slope out of it;
    collinear points are kept so that the smallest-index maximiser of a
    linear functional is always a vertex. Slopes rather than cross products
    are compared: products of tiny differences underflow to zero, and the
    slopes are the very numbers the conjugate later bisects on. A few
    vectorised sweeps thin the points, then a monotone-chain stack finishes
    in linear time.
    """
    idx = np.arange(x.shape[0])
    for _ in range(_SWEEPS):
        if idx.size <= 2:
            return idx
        s = np.diff(y[idx]) / np.diff(x[idx])
        above = s[:-1] > s[1:]
        if not above.any():
            return idx
        keep = np.ones(idx.size, dtype=bool)
        keep[1:-1] = ~above
        idx = idx[keep]
    xs, ys = x[idx].tolist(), y[idx].tolist()
    stack = []
    for j in range(len(xs)):
        while len(stack) >= 2:
            a, b = stack[-2], stack[-1]
            if (ys[b] - ys[a]) / (xs[b] - xs[a]) > (ys[j] - ys[b]) / (xs[j] - xs[b]):
                stack.pop()
            else:
                break
        stack.append(j)
    return idx[np.asarray(stack, dtype=np.int64)]


def _near_hull(p, y, v, hull):
    """Indices of nodes lying within a generous rounding margin of the lower hull."""
    if hull.size == 1:
        return hull
    seg = np.clip(np.searchsorted(hull, np.arange(y.shape[0]), side="right") - 1, 0, hull.size - 2)
    slope = np.diff(v[hull]) / np.diff(y[hull])
    dev = v - (v[hull[seg]] + slope[seg] * (y - y[hull[seg]]))
    ymax = np.max(np.abs(y))
    margin = 64 * np.finfo(float).eps * (
        (np.max(np.abs(p)) + np.abs(slope[seg])) * ymax + np.max(np.abs(v))
    )
    keep = dev <= margin
    keep[hull] = True
    return np.flatnonzero(keep)


def _settle(p, y, v, hull, k):
    """Exact smallest-index maximiser of ``p*y - v`` near hull position ``k``.

    In exact arithmetic the objective is unimodal along the hull, but after
    rounding a run of neighbouring vertices (and points lying within rounding
    of the hull between them) may tie with the maximum or beat it by an ulp.
    The run of hull vertices within a few ulps of the best value is found
    by bisection on either side of it. Every node strictly between the hull
    vertices bracketing the run that lies within rounding of the hull is then
    scanned with the oracle's own expression, so ties resolve identically.
    """
    m, nh = p.shape[0], hull.size
    rows = np.arange(m)
    hy, hv = y[hull], v[hull]

    def val(j):
        return p * hy[j] - hv[j]

    best = np.clip(k, 0, nh - 1)
    for d in (-1, 1):
        c = np.clip(k + d, 0, nh - 1)
        better = val(c) > val(best)
        best = np.where(better, c, best)
    top = val(best)
    scale = np.abs(p) * np.max(np.abs(y)) + np.max(np.abs(v))
    tol = 16 * np.finfo(float).eps * scale
    near = top - tol
    # bisect for the ends of the run: the objective rises to ``best`` and falls after it
    lo_a = np.where(val(np.zeros(m, dtype=np.int64)) >= near, 0, 1)
    lo_b = best.copy()
    while np.any(lo_a < lo_b):
        act = lo_a < lo_b
        mid = (lo_a + lo_b) // 2
        ok = val(mid) >= near
        lo_b = np.where(act & ok, mid, lo_b)
        lo_a = np.where(act & ~ok, mid + 1, lo_a)
    hi_a = best.copy()
    hi_b = np.where(val(np.full(m, nh - 1, dtype=np.int64)) >= near, nh - 1, nh - 2)
    while np.any(hi_a < hi_b):
        act = hi_a < hi_b
        mid = (hi_a + hi_b + 1) // 2
        ok = val(mid) >= near
        hi_a = np.where(act & ok, mid, hi_a)
        hi_b = np.where(act & ~ok, mid - 1, hi_b)
    lo, hi = np.minimum(lo_b, best), np.maximum(hi_a, best)
    a = np.where(lo > 0, hull[np.maximum(lo - 1, 0)] + 1, 0)
    b = np.where(hi < nh - 1, hull[np.minimum(hi + 1, nh - 1)] - 1, y.shape[0] - 1)
    arg = hull[best]
    # only nodes within rounding of their hull chord can tie with a vertex
    cand = _near_hull(p, y, v, hull)
    ca = np.searchsorted(cand, a, side="left")
    cb = np.searchsorted(cand, b, side="right") - 1
    wide = np.flatnonzero(cb > ca)
    if wide.size:
        width = int(np.max(cb[wide] - ca[wide])) + 1
        chunk = max(1, _CHUNK // width)
        offs = np.arange(width)
        for s0 in range(0, wide.size, chunk):
            r = wide[s0 : s0 + chunk]
            pos = ca[r, None] + offs[None, :]
            ok = pos <= cb[r, None]
            idx = cand[np.minimum(pos, cand.size - 1)]
            vals = np.where(ok, p[r, None] * y[idx] - v[idx], -np.inf)
            arg[r] = idx[rows[: r.size], np.argmax(vals, axis=1)]
    return arg


def conjugate(f: GridFn, dual_grid: Grid | None = None) -> ConjugateResult:
    """Legendre-Fenchel conjugate ``f*(p) = max_y (p*y - f(y))`` over the grid nodes.

    The maximiser of ``p*y - f(y)`` is always a vertex of the lower convex
    hull of the graph and moves monotonically with ``p``; after extracting
    the hull the maximiser of every dual node is located by bisection on the
    hull slopes and then settled with the same floating-point expression the
    brute-force scan uses (see :func:`_settle`).

    Args:
        f: proper function on a uniform grid (``+inf`` values allowed).
        dual_grid: grid of slopes ``p``; defaults to :func:`default_dual_grid`.

    Returns:
        :class:`ConjugateResult` with the conjugate on ``dual_grid`` and the
        smallest maximising primal index per dual node.
    """
    _require_proper(f)
    dual = default_dual_grid(f) if dual_grid is None else dual_grid
    y_all = f.nodes
    fin = np.flatnonzero(f.finite)
    y, v = y_all[fin], f.values[fin]
    p = dual.nodes

    hull = lower_hull(y, v)
    if hull.size == 1:
        k = np.zeros(p.shape[0], dtype=np.int64)
    else:
        s = np.maximum.accumulate(np.diff(v[hull]) / np.diff(y[hull]))
        k = np.searchsorted(s, p, side="left")
    arg = fin[_settle(p, y, v, hull, k)]
    values = p * y_all[arg] - f.values[arg]
    return ConjugateResult(GridFn(dual, values), arg.astype(np.int64))


def conjugate_bruteforce(f: GridFn, dual_grid: Grid | None = None) -> ConjugateResult:
    """O(n*m) oracle for :func:`conjugate`: scan every primal node for every slope."""
    _require_proper(f)
    dual = default_dual_grid(f) if dual_grid is None else dual_grid
    y, v = f.nodes, f.values
    p = dual.nodes
    arg = np.empty(p.shape[0], dtype=np.int64)
    rows = max(1, _CHUNK // y.shape[0])
    for s in range(0, p.shape[0], rows):
        block = p[s : s + rows, None] * y[None, :] - v[None, :]
        arg[s : s + rows] = np.argmax(block, axis=1)
    values = p * y[arg] - v[arg]
    return ConjugateResult(GridFn(dual, values), arg)


def biconjugate(f: GridFn, dual_grid: Grid | None = None) -> GridFn:
    """``f**`` on the grid of ``f``: its closed convex envelope (equal to ``f`` when convex)."""
    fs = conjugate(f, dual_grid).fstar
    return conjugate(fs, f.grid).fstar


def convex_envelope_bruteforce(f: GridFn) -> GridFn:
    """Oracle for :func:`biconjugate`: largest convex minorant through explicit chords.

    For every node ``x`` the envelope is the minimum, over all node pairs
    ``a <= x <= b``, of the chord from ``(a, f(a))`` to ``(b, f(b))``.
    """
    _require_proper(f)
    x = f.nodes
    v = f.values
    n = f.n
    out = np.full(n, np.inf)
    for a in range(n):
        if not np.isfinite(v[a]):
            continue
        b = np.arange(a, n)
        fb = v[b]
        ok = np.isfinite(fb)
        b, fb = b[ok], fb[ok]
        out[a] = min(out[a], v[a])
        for j, fbj in zip(b[1:], fb[1:]):
            lam = (x[a : j + 1] - x[a]) / (x[j] - x[a])
            chord = (1 - lam) * v[a] + lam * fbj
            np.minimum(out[a : j + 1], chord, out=out[a : j + 1])
    return f.with_values(out)


def _minkowski_grid(f: GridFn, g: GridFn) -> Grid:
    return Grid(f.x_min + g.x_min, f.x_max + g.x_max, f.n + g.n - 1)


def _check_commensurate(f: GridFn, g: GridFn):
    if abs(f.dx - g.dx) > 1e-9 * g.dx:
        raise GridError(f"incommensurate grids: dx={f.dx!r} vs dx={g.dx!r}")


def inf_conv_direct(f: GridFn, g: GridFn, out: Grid | None = None):
    """Inf-convolution ``h(x) = min_y f(x - y) + g(y)`` over the nodes ``y`` of ``g``.

    ``f`` is ``+inf`` off its grid, so only the offsets ``x - y`` landing on
    a node of ``f`` compete. The minimum is attained on the grid, and the
    smallest minimising ``y`` is recorded.

    Args:
        f, g: proper functions with equal spacing.
        out: output grid, commensurate with both; defaults to the full
            support ``[f.x_min + g.x_min, f.x_max + g.x_max]``.

    Returns:
        ``(h, y_index)``: the inf-convolution on ``out`` (``+inf`` where no
        offset is reachable) and the index into ``g``'s grid of the smallest
        minimiser (``-1`` where ``h`` is ``+inf``).
    """
    _require_proper(f)
    _require_proper(g)
    _check_commensurate(f, g)
    if out is None:
        out = _minkowski_grid(f, g)
    dx = g.dx
    # y index of node (i, a): out.x_min + i*dx - (f.x_min + a*dx) = g.x_min + k*dx
    base = (out.x_min - f.x_min - g.x_min) / dx
    if abs(abs(out.dx) - dx) > 1e-9 * dx or abs(base - round(base)) > 1e-6:
        raise GridError("output grid is not commensurate with the operands")
    base = int(round(base))
    i = np.arange(out.n)
    best = np.full(out.n, np.inf)
    arg = np.full(out.n, -1, dtype=np.int64)
    fv, gv = f.values, g.values
    # ascending y <=> descending kernel index; strict improvement keeps the smallest y
    for a in range(f.n - 1, -1, -1):
        if not np.isfinite(fv[a]):
            continue
        k = base + i - a
        lo = max(0, -(base - a))
        hi = min(out.n, g.n - (base - a))
        if lo >= hi:
            continue
        cand = fv[a] + gv[k[lo:hi]]
        cur = best[lo:hi]
        better = cand < cur
        if better.any():
            cur[better] = cand[better]
            arg[lo:hi][better] = k[lo:hi][better]
    return GridFn(out, best), arg


def inf_conv_bruteforce(f: GridFn, g: GridFn, out: Grid | None = None):
    """Oracle for :func:`inf_conv_direct`: explicit double loop over output and ``g`` nodes."""
    _check_commensurate(f, g)
    if out is None:
        out = _minkowski_grid(f, g)
    x = out.nodes
    y = g.nodes
    best = np.full(out.n, np.inf)
    arg = np.full(out.n, -1, dtype=np.int64)
    for i in range(out.n):
        for k in range(g.n):
            a = int(round((x[i] - y[k] - f.x_min) / f.dx))
            if 0 <= a < f.n:
                c = f.values[a] + g.values[k]
                if c < best[i]:
                    best[i], arg[i] = c, k
    return GridFn(out, best), arg


def tau_dual(f: GridFn, g: GridFn) -> float:
    """Tolerance ``5 * dx * (1 + max(Lip f, Lip g))`` for comparing the two inf-convolutions."""
    return 5.0 * g.dx * (1.0 + max(f.lipschitz(), g.lipschitz()))


def inf_conv_dual(f: GridFn, g: GridFn, out: Grid | None = None, dual_grid: Grid | None = None):
    """Gamma-convolution ``(f* + g*)*``; equals the inf-convolution for convex operands.

    Both conjugates are taken on one dual grid spanning the slopes of either
    operand.
    """
    for name, h in (("first", f), ("second", g)):
        if not h.is_convex():
            raise ConvexityError(f"Γ-convolution requires convex operands ({name} operand is not convex)")
    _check_commensurate(f, g)
    if out is None:
        out = _minkowski_grid(f, g)
    if dual_grid is None:
        L = max(f.lipschitz(), g.lipschitz()) or 1.0
        dual_grid = Grid(-L, L, max(f.n, g.n))
    fs = conjugate(f, dual_grid).fstar
    gs = conjugate(g, dual_grid).fstar
    s = fs.with_values(fs.values + gs.values)
    return conjugate(s, out).fstar


def moreau_yosida(f: GridFn, tau) -> GridFn:
    """Moreau-Yosida envelope ``min_y (x - y)**2 / (2 tau) + f(y)`` on the grid of ``f``."""
    if not tau > 0:
        raise ValueError(f"Moreau-Yosida parameter must be positive, got {tau!r}")
    _require_proper(f)
    n = f.n
    z = np.arange(-(n - 1), n) * f.dx
    kernel = GridFn(Grid(z[0], z[-1], z.shape[0]), z * z / (2 * tau))
    h, _ = inf_conv_direct(kernel, f, out=f.grid)
    return h
