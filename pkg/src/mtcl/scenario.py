"""
Scenario files and the commands that run them.

A scenario is a line-oriented ``key = value`` file with ``[section]``
headers::

    [problem]
    name = burgers-shock
    h1 = quadratic 1
    h2 = quadratic 1
    initial = step 1 0
    datum = u0

    [grid]
    x_min = -3.5
    x_max = 4.5
    n = 4001
    window = -1 2

    [times]
    t1 = 0.25 0.5 1
    t2 = linspace 0.25 1 4

    [tolerances]
    oracle = 0.02

    [output]
    dir = out

``#`` starts a comment. Every error names the offending line.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from mtcl import claw, convex, fv, hj
from mtcl import io as mio
from mtcl.errors import ConfigError, MTCLError
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import Hamiltonian, PowerEven, Quadratic, TabulatedConvex, Zero, combine
from mtcl.report import Report, fmt, merge_summaries
from mtcl.testfunctions import TestFn, kruzkov_family, smooth_entropy

__all__ = ["ScenarioConfig", "parse_scenario", "COMMANDS", "SUITES", "run", "RunResult"]

COMMANDS = ("solve-hj", "solve-claw", "verify", "compare-oracle", "conjugate")
SUITES = ("all", "convex", "hj", "claw")

_TOLERANCE_KEYS = {
    "dual": None,  # convex duality checks; default 5 dx (1 + Lip)
    "semigroup": None,  # default tau_dual + 2 (1 + Lip g) dx
    "lipschitz": 1e-6,
    "residual": None,  # default 5 (dt + dx)
    "masked": 0.05,
    "trace_ratio": 0.25,
    "weak": None,  # default 10 (dx + dt1 + dt2) ||u0||
    "oracle": 0.02,  # L1 distance per unit window length and unit data size
    "bumps": 10,
    "seed": 0,
}

_SECTIONS = {
    "problem": {"name", "h1", "h2", "initial", "datum"},
    "grid": {"x_min", "x_max", "n", "window"},
    "times": {"t1", "t2"},
    "tolerances": set(_TOLERANCE_KEYS),
    "output": {"dir", "fields"},
}


@dataclass
class ScenarioConfig:
    """Validated scenario with defaults applied."""

    name: str
    source: Path
    h1: Hamiltonian
    h2: Hamiltonian
    h_text: tuple
    initial: GridFn
    initial_text: str
    datum: str
    grid: Grid
    window: tuple | None
    t1: np.ndarray
    t2: np.ndarray
    tolerances: dict = field(default_factory=dict)
    out_dir: str | None = None
    write_fields: bool = True

    @property
    def is_claw(self):
        return self.datum == "u0"

    def g(self) -> GridFn:
        return claw.primitive(self.initial) if self.is_claw else self.initial

    def hj_problem(self) -> hj.HJProblem:
        return hj.HJProblem(self.h1, self.h2, self.g())

    def claw_problem(self) -> claw.ClawProblem:
        if not self.is_claw:
            raise ConfigError("conservation-law commands need 'datum = u0'")
        return claw.ClawProblem(self.h1, self.h2, self.initial)

    def report_window(self, lip):
        """Configured window, or the grid shrunk by the stencil reach of the largest time pair."""
        if self.window is not None:
            return self.window
        h = combine(self.h1, self.h2, (self.t1[-1], self.t2[-1]))
        reach = 0.0 if isinstance(h, Zero) else hj.lax_kernel(h, self.grid.dx, lip).half_width * self.grid.dx
        return (self.grid.x_min + reach, self.grid.x_max - reach)


# --------------------------------------------------------------------- parsing


def _read_sections(path: Path):
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"cannot read scenario {str(path)!r}: {e.strerror}") from None
    sections: dict = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"malformed section header {line!r}", lineno)
            current = line[1:-1].strip()
            if current not in _SECTIONS:
                raise ConfigError(f"unknown section [{current}]", lineno)
            if current in sections:
                raise ConfigError(f"duplicate section [{current}]", lineno)
            sections[current] = {}
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ConfigError("key outside of any section", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _SECTIONS[current]:
            raise ConfigError(f"unknown key {key!r} in [{current}]", lineno)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r} in [{current}]", lineno)
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno)
        sections[current][key] = (value, lineno)
    return sections


def _float(text, line, what):
    try:
        v = float(text)
    except ValueError:
        raise ConfigError(f"malformed number {text!r} for {what}", line) from None
    if not np.isfinite(v):
        raise ConfigError(f"{what} must be finite", line)
    return v


def _int(text, line, what):
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"malformed integer {text!r} for {what}", line) from None


def _floats(text, line, what):
    return [_float(t, line, what) for t in text.split()]


def _resolve(base: Path, text, line):
    p = Path(text)
    if not p.is_absolute():
        p = base / p
    if not p.is_file():
        raise ConfigError(f"file not found: {str(p)!r}", line)
    return p


def _read_gridfn(path, line):
    try:
        return mio.read_gridfn(path)
    except MTCLError as e:
        raise ConfigError(str(e), line) from None


def _hamiltonian(text, line, base):
    kind, *args = text.split()
    try:
        if kind == "quadratic":
            if len(args) > 1:
                raise ConfigError("quadratic takes at most one parameter 'a'", line)
            return Quadratic(_float(args[0], line, "a") if args else 1.0)
        if kind == "power":
            if len(args) not in (1, 2):
                raise ConfigError("power takes 'k [a]'", line)
            a = _float(args[1], line, "a") if len(args) == 2 else 1.0
            return PowerEven(_int(args[0], line, "k"), a)
        if kind == "tabulated":
            if len(args) != 1:
                raise ConfigError("tabulated takes a CSV path", line)
            return TabulatedConvex(_read_gridfn(_resolve(base, args[0], line), line))
    except ConfigError:
        raise
    except (MTCLError, ValueError) as e:
        raise ConfigError(str(e), line) from None
    raise ConfigError(f"unknown Hamiltonian kind {kind!r} (quadratic, power, tabulated)", line)


def _initial_builder(text, line, base):
    """Returns ``(grid_or_None, fn)``: a CSV fixes its own grid, builtins are evaluated later."""
    kind, *args = text.split()

    def nums(counts):
        if len(args) not in counts:
            return None
        return [_float(a, line, f"{kind} parameter") for a in args]

    if kind == "constant":
        v = nums((1,))
        if v is None:
            raise ConfigError("constant takes one value", line)
        return None, lambda x: np.full_like(x, v[0])
    if kind == "step":
        v = nums((2, 3))
        if v is None:
            raise ConfigError("step takes 'u_left u_right [x0]'", line)
        x0 = v[2] if len(v) == 3 else 0.0
        return None, lambda x: np.where(x < x0, v[0], v[1])
    if kind == "ramp":
        v = nums((4,))
        if v is None or not v[2] < v[3]:
            raise ConfigError("ramp takes 'u_left u_right a b' with a < b", line)
        return None, lambda x: np.interp(x, [v[2], v[3]], [v[0], v[1]])
    if kind == "sine":
        v = nums((2,))
        if v is None:
            raise ConfigError("sine takes 'amplitude wavenumber'", line)
        return None, lambda x: v[0] * np.sin(v[1] * x)
    if kind == "csv":
        if len(args) != 1:
            raise ConfigError("csv takes a path", line)
        f = _read_gridfn(_resolve(base, args[0], line), line)
        return f.grid, lambda x: f.values
    raise ConfigError(f"unknown initial datum {kind!r} (constant, step, ramp, sine, csv)", line)


def _times(text, line, key):
    parts = text.split()
    if parts[0] == "linspace":
        if len(parts) != 4:
            raise ConfigError(f"{key} = linspace takes 'a b n'", line)
        a, b = _float(parts[1], line, key), _float(parts[2], line, key)
        n = _int(parts[3], line, key)
        if n < 1:
            raise ConfigError(f"{key} needs at least one time", line)
        ts = np.linspace(a, b, n)
    else:
        ts = np.array(_floats(text, line, key))
    if np.any(ts < 0):
        raise ConfigError("times must be nonnegative", line)
    if np.any(np.diff(ts) <= 0):
        raise ConfigError(f"{key} must be strictly increasing", line)
    return ts


def _require(sections, sec, key):
    if key not in sections.get(sec, {}):
        raise ConfigError(f"missing required key {key!r} in [{sec}]")
    return sections[sec][key]


def parse_scenario(path) -> ScenarioConfig:
    """Read and validate a scenario file; relative paths inside it resolve against its directory."""
    path = Path(path)
    sections = _read_sections(path)
    base = path.parent
    prob = sections.get("problem", {})

    name = prob.get("name", (path.stem, 0))[0]
    h_items = [_require(sections, "problem", k) for k in ("h1", "h2")]
    h1, h2 = (_hamiltonian(v, ln, base) for v, ln in h_items)
    init_text, init_line = _require(sections, "problem", "initial")
    file_grid, init_fn = _initial_builder(init_text, init_line, base)
    datum, dline = prob.get("datum", ("u0", 0))
    if datum not in ("u0", "g"):
        raise ConfigError(f"datum must be 'u0' or 'g', got {datum!r}", dline)

    gs = sections.get("grid", {})
    if file_grid is not None:
        for k in ("x_min", "x_max", "n"):
            if k in gs:
                raise ConfigError(f"[grid] {k} conflicts with the grid of the CSV datum", gs[k][1])
        grid = file_grid
    else:
        x_min = _float(*_require(sections, "grid", "x_min"), "x_min")
        x_max = _float(*_require(sections, "grid", "x_max"), "x_max")
        n = _int(*gs.get("n", ("4001", 0)), "n")
        try:
            grid = Grid(x_min, x_max, n)
        except MTCLError as e:
            raise ConfigError(str(e), gs.get("n", gs["x_max"])[1]) from None
    try:
        initial = GridFn(grid, init_fn(grid.nodes))
    except MTCLError as e:
        raise ConfigError(str(e), init_line) from None

    window = None
    if "window" in gs:
        wtext, wline = gs["window"]
        w = _floats(wtext, wline, "window")
        if len(w) != 2 or not w[0] < w[1]:
            raise ConfigError("window takes 'a b' with a < b", wline)
        if w[0] < grid.x_min or w[1] > grid.x_max:
            raise ConfigError(f"window [{w[0]}, {w[1]}] exceeds the grid [{grid.x_min}, {grid.x_max}]", wline)
        window = (w[0], w[1])

    t1 = _times(*_require(sections, "times", "t1"), "t1")
    t2 = _times(*_require(sections, "times", "t2"), "t2")

    tols = dict(_TOLERANCE_KEYS)
    for key, (text, line) in sections.get("tolerances", {}).items():
        if key in ("bumps", "seed"):
            v = _int(text, line, key)
            if v < 0:
                raise ConfigError(f"{key} must be nonnegative", line)
            tols[key] = v
        else:
            v = _float(text, line, key)
            if v <= 0:
                raise ConfigError(f"tolerance {key} must be positive", line)
            tols[key] = v

    out = sections.get("output", {})
    out_dir = None
    if "dir" in out:
        d = Path(out["dir"][0])
        out_dir = str(d if d.is_absolute() else base / d)
    write_fields = True
    if "fields" in out:
        ftext, fline = out["fields"]
        if ftext not in ("true", "false"):
            raise ConfigError("fields must be 'true' or 'false'", fline)
        write_fields = ftext == "true"

    return ScenarioConfig(
        name=name,
        source=path,
        h1=h1,
        h2=h2,
        h_text=(h_items[0][0], h_items[1][0]),
        initial=initial,
        initial_text=init_text,
        datum=datum,
        grid=grid,
        window=window,
        t1=t1,
        t2=t2,
        tolerances=tols,
        out_dir=out_dir,
        write_fields=write_fields,
    )


# ------------------------------------------------------------------- commands


@dataclass
class RunResult:
    reports: list
    summary: list
    files: list

    @property
    def passed(self):
        return all(r.passed for r in self.reports)


def _window_grid(cfg: ScenarioConfig, lip):
    a, b = cfg.report_window(lip)
    i0, i1 = cfg.grid.index_window(a, b)
    return cfg.grid.subgrid(i0, i1)


def _info(cfg, command, window):
    rep = Report("scenario")
    rep.metrics.update(
        {
            "name": cfg.name,
            "command": command,
            "h1": cfg.h_text[0],
            "h2": cfg.h_text[1],
            "initial": cfg.initial_text,
            "datum": cfg.datum,
            "grid.n": cfg.grid.n,
            "grid.dx": cfg.grid.dx,
            "window.x_min": window.x_min,
            "window.x_max": window.x_max,
            "times.n1": int(cfg.t1.size),
            "times.n2": int(cfg.t2.size),
        }
    )
    return rep


def _key(a, b):
    return f"[t1={fmt(a)},t2={fmt(b)}]"


def _solve_hj(cfg, jobs):
    p = cfg.hj_problem()
    window = _window_grid(cfg, p.lip_g)
    f = hj.lax_field(p, cfg.t1, cfg.t2, window, jobs=jobs)
    rep = Report("hj")
    rep.metrics["lip_g"] = p.lip_g
    rep.metrics["w.min"] = float(np.min(f.w))
    rep.metrics["w.max"] = float(np.max(f.w))
    return window, f, [rep]


def _front_level(u0w):
    return 0.5 * (float(np.min(u0w)) + float(np.max(u0w)))


def _solve_claw(cfg, jobs):
    p = cfg.claw_problem()
    window = _window_grid(cfg, p.hj.lip_g)
    f = claw.lax_oleinik_field(p, cfg.t1, cfg.t2, window, jobs=jobs)
    rep = Report("claw")
    level = _front_level(f.u0_window())
    rep.metrics["front.level"] = level
    for i, a in enumerate(f.t1):
        for j, b in enumerate(f.t2):
            rep.metrics[f"front{_key(a, b)}"] = claw.front_position(f.slice(i, j), level)
            rep.metrics[f"tv{_key(a, b)}"] = float(claw.total_variation(f.u[i, j]))
    return window, f, [rep]


def _bumps(cfg, t1, t2, window: Grid, seed_offset=0):
    """Deterministic bumps inside the lattice, one quarter of each time span and an eighth of the window wide."""
    n = cfg.tolerances["bumps"]
    if n == 0 or t1.size < 3 or t2.size < 3:
        return []
    rng = np.random.default_rng(cfg.tolerances["seed"] + seed_offset)
    r1 = (t1[-1] - t1[0]) / 4
    r2 = (t2[-1] - t2[0]) / 4
    rx = (window.x_max - window.x_min) / 8
    out = []
    for _ in range(n):
        c = (
            rng.uniform(t1[0] + r1, t1[-1] - r1),
            rng.uniform(t2[0] + r2, t2[-1] - r2),
            rng.uniform(window.x_min + rx, window.x_max - rx),
        )
        out.append(TestFn(c, (r1, r2, rx)))
    return out


def _suite_convex(cfg):
    g = cfg.g()
    tol = cfg.tolerances["dual"]
    rep = Report("convex")
    fast = convex.conjugate(g)
    brute = convex.conjugate_bruteforce(g)
    same = np.array_equal(fast.fstar.values, brute.fstar.values) and np.array_equal(fast.argmax, brute.argmax)
    rep.add("conjugate.bitwise", same)
    rep.add("conjugate.argmax_monotone", bool(np.all(np.diff(fast.argmax) >= 0)))
    fs = fast.fstar
    # Fenchel-Young on every node pair: f(y) + f*(p) - p y >= 0
    y, p = g.nodes, fs.nodes
    rows = max(1, (1 << 22) // g.n)
    fy = min(
        float(np.min(g.values[None, :] + fs.values[s : s + rows, None] - p[s : s + rows, None] * y[None, :]))
        for s in range(0, p.size, rows)
    )
    scale = max(1.0, g.sup_norm(), fs.sup_norm())
    fy_tol = 1e-12 * scale * g.n
    rep.add("fenchel_young", fy >= -fy_tol, float(fy), -fy_tol)
    if g.is_convex():
        t = convex.tau_dual(g, g) if tol is None else tol
        bi = convex.biconjugate(g)
        gap = float(np.max(np.abs(bi.values - g.values)))
        rep.add("biconjugate", gap <= t, gap, t)
        k = hj.lax_kernel(cfg.h1, g.dx, g.lipschitz()).values
        t = convex.tau_dual(k, g) if tol is None else tol
        direct, _ = convex.inf_conv_direct(k, g)
        dual = convex.inf_conv_dual(k, g)
        gap = float(np.max(np.abs(direct.values - dual.values)))
        rep.add("duality", gap <= t, gap, t)
    else:
        rep.metrics["biconjugate"] = "skipped (datum not convex)"
    my = convex.moreau_yosida(g, 1.0)
    rep.add("moreau_below", bool(np.all(my.values <= g.values)))
    return [rep]


def _lattice_pairs(t1, t2):
    return [(a, b) for a in t1 for b in t2 if a > 0 and b > 0]


def _suite_hj(cfg, jobs):
    p = cfg.hj_problem()
    window = _window_grid(cfg, p.lip_g)
    f = hj.lax_field(p, cfg.t1, cfg.t2, window, jobs=jobs)
    reps = []
    tol_sg = cfg.tolerances["semigroup"]
    t_last = (float(cfg.t1[-1]), float(cfg.t2[-1]))
    half = (t_last[0] / 2, t_last[1] / 2)
    reps.append(hj.semigroup_check(p, half, t_last, window, tol=tol_sg))
    reps.append(hj.commutation_check(p, t_last, window, tol=tol_sg))
    reps.append(hj.lipschitz_report(f, tol=cfg.tolerances["lipschitz"]))
    if p.g.is_convex():
        rep = Report("hopf")
        t = convex.tau_dual(p.g, p.g) if cfg.tolerances["dual"] is None else cfg.tolerances["dual"]
        gap = 0.0
        for i, a in enumerate(f.t1):
            for j, b in enumerate(f.t2):
                hv = hj.hopf_eval(p, (a, b), window).values
                gap = max(gap, float(np.max(np.abs(hv - f.w[i, j]))))
        rep.add("lax_vs_hopf", gap <= t, gap, t)
        reps.append(rep)
    if min(f.w.shape) >= 3:
        reps.append(hj.residual_report(f, bound=cfg.tolerances["residual"], max_masked=cfg.tolerances["masked"]))
        reps.append(hj.viscosity_check(f, _bumps(cfg, f.t1, f.t2, window, 1)))
    return reps


def _perturbed(cfg, window: Grid):
    """``u0`` plus opposite bumps of height 0.1 ||u0|| (0.1 if u0 = 0) near the window centre."""
    from mtcl.testfunctions import bump

    c = 0.5 * (window.x_min + window.x_max)
    r = (window.x_max - window.x_min) / 16
    amp = 0.1 * (cfg.initial.sup_norm() or 1.0)
    x = cfg.initial.nodes
    pert = amp * (bump((x - c + 2 * r) / r) - bump((x - c - 2 * r) / r))
    return claw.ClawProblem(cfg.h1, cfg.h2, cfg.initial.with_values(cfg.initial.values + pert))


def _suite_claw(cfg, jobs):
    p = cfg.claw_problem()
    window = _window_grid(cfg, p.hj.lip_g)
    f = claw.lax_oleinik_field(p, cfg.t1, cfg.t2, window, jobs=jobs)
    reps = [claw.oleinik_report(f), claw.bv_report(f), claw.hj_consistency(f)]
    bumps = _bumps(cfg, f.t1, f.t2, window, 2)
    if bumps:
        tau = cfg.tolerances["weak"]
        sup = p.sup or 1.0
        pairs = kruzkov_family(p.h1, p.h2, -sup, sup) + [smooth_entropy(k, p.h1, p.h2) for k in (-sup, 0.0, sup)]
        for which in (1, 2):
            reps.append(claw.weak_residual(f, bumps, which, tau=tau))
            reps.append(claw.entropy_residual(f, pairs, bumps, which, tau=tau))
    if len(claw._diagonal_pairs(f)) >= 2:
        reps.append(claw.initial_trace(f, ratio_tol=cfg.tolerances["trace_ratio"]))
    for axis, (tz, to) in ((1, (f.t1, f.t2)), (2, (f.t2, f.t1))):
        if tz.size >= 3 and to.size >= 2 and to[0] == 0:
            q = _perturbed(cfg, window)
            fb = claw.lax_oleinik_field(q, cfg.t1, cfg.t2, window, jobs=jobs)
            zeta = claw.Bump1D(0.5 * (tz[0] + tz[-1]), 0.5 * (tz[-1] - tz[0]))
            m = claw.data_speed(p.h2 if axis == 1 else p.h1, max(p.sup, q.sup))
            radius = 0.5 * (window.x_max - window.x_min) - m * float(to[-1])
            if radius > 0:
                centre = 0.5 * (window.x_min + window.x_max)
                reps.append(claw.l1_contraction(f, fb, zeta, axis, radius, center=centre))
    return reps


def _compare_oracle(cfg):
    p = cfg.claw_problem()
    window = _window_grid(cfg, p.hj.lip_g)
    rep = Report("oracle")
    length = window.x_max - window.x_min
    bound = cfg.tolerances["oracle"] * (p.sup or 1.0) * length
    for a, b in _lattice_pairs(cfg.t1, cfg.t2) or [(a, b) for a in cfg.t1 for b in cfg.t2 if a + b > 0]:
        lo = claw.lax_oleinik_eval(p, (a, b), window).u
        for order in (fv.H1_FIRST, fv.H2_FIRST):
            gv = fv.split_evolve(p.u0, p.h1, p.h2, (a, b), order, report=window)
            d = fv.l1_distance(lo, gv)
            rep.add(f"l1{_key(a, b)}.{order}", d <= bound, d, bound)
    return [rep]


def _conjugate(cfg):
    g = cfg.g()
    res = convex.conjugate(g)
    rep = Report("conjugate")
    rep.add("argmax_monotone", bool(np.all(np.diff(res.argmax) >= 0)))
    rep.add("convex", res.fstar.is_convex())
    rep.metrics["dual.x_min"] = res.fstar.x_min
    rep.metrics["dual.x_max"] = res.fstar.x_max
    rep.metrics["dual.n"] = res.fstar.n
    return res.fstar, [rep]


def default_out_dir(cfg: ScenarioConfig, out=None):
    if out:
        return Path(out)
    env = os.environ.get("MTCL_OUT")
    if env:
        return Path(env)
    if cfg.out_dir:
        return Path(cfg.out_dir)
    return Path("mtcl-out")


def run(cfg: ScenarioConfig, command, suite="all", out=None, jobs=1) -> RunResult:
    """Execute ``command`` on ``cfg`` and write its artifacts.

    Writes ``<name>.<command>.summary`` (``key=value`` lines) and, for the
    solve commands, the field CSV into the output directory.
    """
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    if suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    out_dir = default_out_dir(cfg, out)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    reports = []
    g = cfg.g()
    info = _info(cfg, command, _window_grid(cfg, g.lipschitz()))

    if command == "solve-hj":
        _, f, reports = _solve_hj(cfg, jobs)
        if cfg.write_fields:
            path = out_dir / f"{cfg.name}.hjfield.csv"
            mio.write_hjfield(f, path)
            files.append(path)
    elif command == "solve-claw":
        _, f, reports = _solve_claw(cfg, jobs)
        if cfg.write_fields:
            path = out_dir / f"{cfg.name}.clawfield.csv"
            mio.write_clawfield(f, path)
            files.append(path)
    elif command == "verify":
        if suite in ("all", "convex"):
            reports += _suite_convex(cfg)
        if suite in ("all", "hj"):
            reports += _suite_hj(cfg, jobs)
        if suite in ("all", "claw"):
            if cfg.is_claw:
                reports += _suite_claw(cfg, jobs)
            elif suite == "claw":
                raise ConfigError("suite 'claw' needs 'datum = u0'")
    elif command == "compare-oracle":
        reports = _compare_oracle(cfg)
    elif command == "conjugate":
        fstar, reports = _conjugate(cfg)
        path = out_dir / f"{cfg.name}.conjugate.csv"
        mio.write_gridfn(fstar, path)
        files.append(path)

    checks = sum(len(r.checks) for r in reports)
    status = Report("status")
    status.metrics["checks"] = checks
    status.metrics["failed"] = sum(not c.passed for r in reports for c in r.checks)
    status.metrics["result"] = "PASS" if all(r.passed for r in reports) else "FAIL"
    summary = merge_summaries([info] + reports + [status])
    path = out_dir / f"{cfg.name}.{command}.summary"
    mio.write_summary(summary, path)
    files.append(path)
    return RunResult(reports, summary, files)
