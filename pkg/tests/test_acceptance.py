"""Acceptance criteria AC01-AC13, one test each.

Every test prints ``PASS ACnn ...`` or ``FAIL ACnn ...`` past pytest's output
capture, naming the failed sub-checks, and then asserts.
"""

import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from conftest import random_convex, riemann_problem
from mtcl.claw import (
    Bump1D,
    ClawProblem,
    entropy_residual,
    front_position,
    initial_trace,
    l1_contraction,
    lax_oleinik_field,
    oleinik_report,
    riemann_field,
    shift_front,
    tau_weak,
    weak_residual,
)
from mtcl.cli import main
from mtcl.convex import (
    biconjugate,
    conjugate,
    conjugate_bruteforce,
    convex_envelope_bruteforce,
    inf_conv_direct,
    inf_conv_dual,
    tau_dual,
)
from mtcl.fv import H1_FIRST, H2_FIRST, l1_distance, split_evolve
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import PowerEven, Quadratic
from mtcl.hj import (
    HJProblem,
    commutation_check,
    lax_field,
    lipschitz_report,
    pde_residual,
    residual_report,
    semigroup_check,
    tau_semigroup,
)
from mtcl.testfunctions import TestFn, bump, kruzkov_family, random_bumps

H = Quadratic(1.0)
SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title):
        checks = {}
        ok = False
        try:
            yield checks
            ok = bool(checks) and all(checks.values())
        finally:
            bad = [name for name, passed in checks.items() if not passed]
            status = "PASS" if ok else "FAIL"
            detail = f" [failed: {', '.join(bad)}]" if bad else ("" if ok else " [error]")
            with capsys.disabled():
                print(f"\n{status} AC{number:02d} {title}{detail}")
        assert ok, f"AC{number:02d} failed: {bad}"

    return run


def test_ac01_conjugate_bitwise(criterion):
    with criterion(1, "fast conjugate equals brute force bitwise, 20 convex n=2001, < 5 s") as c:
        rng = np.random.default_rng(1)
        start = time.perf_counter()
        for k in range(20):
            f = random_convex(rng, n=2001)
            fast, brute = conjugate(f), conjugate_bruteforce(f)
            c[f"values[{k}]"] = np.array_equal(fast.fstar.values, brute.fstar.values)
            c[f"argmax[{k}]"] = np.array_equal(fast.argmax, brute.argmax)
        c["runtime"] = time.perf_counter() - start < 5.0


def test_ac02_fenchel_moreau(criterion):
    with criterion(2, "biconjugate restores convex data, W-shape flattens to its hull") as c:
        rng = np.random.default_rng(2)
        grid = Grid(-2, 2, 801)
        convex = [GridFn.from_callable(fn, grid) for fn in (np.abs, np.square, np.exp, lambda x: np.maximum(x, 0))]
        convex += [random_convex(rng, n=801) for _ in range(6)]
        for k, f in enumerate(convex):
            c[f"convex[{k}]"] = np.max(np.abs(biconjugate(f).values - f.values)) <= tau_dual(f, f)
        w = GridFn.from_callable(lambda x: (x * x - 1) ** 2, Grid(-1.5, 1.5, 301))
        bi = biconjugate(w, Grid(-20, 20, 4001))
        c["w_shape"] = np.max(np.abs(bi.values - convex_envelope_bruteforce(w).values)) <= tau_dual(w, w)
        # the hull is flat at 0 between the wells
        c["w_shape_flat"] = np.max(np.abs(bi.values[np.abs(w.nodes) <= 1])) <= tau_dual(w, w)


def test_ac03_duality(criterion):
    with criterion(3, "direct and dual inf-convolution agree within tau_dual on 10 convex pairs") as c:
        rng = np.random.default_rng(3)
        grid = Grid(-3, 3, 601)
        out = Grid(-1, 1, 201)
        a, b = 0.5, 1.5
        quad = lambda s: GridFn.from_callable(lambda x: x * x / (2 * s), grid)  # noqa: E731
        f1, f2 = quad(a), quad(b)
        h, _ = inf_conv_direct(f1, f2, out=out)
        c["quadratic_closed_form"] = np.max(np.abs(h.values - out.nodes**2 / (2 * (a + b)))) <= tau_dual(f1, f2)
        pairs = [(f1, f2)]
        fns = [np.abs, lambda x: np.maximum(x, 0), lambda x: np.exp(x / 3), lambda x: x**4 / 12]
        pairs += [(GridFn.from_callable(fns[k], grid), quad(0.5 + k)) for k in range(4)]
        pairs += [(GridFn.from_callable(np.abs, grid), GridFn.from_callable(fns[2], grid))]
        for _ in range(4):
            f = random_convex(rng, n=601, half=3.0)
            g = random_convex(rng, n=601, half=3.0)
            pairs.append((f, g))
        assert len(pairs) == 10
        for k, (f, g) in enumerate(pairs):
            direct, _ = inf_conv_direct(f, g, out=out)
            dual = inf_conv_dual(f, g, out=out)
            c[f"pair[{k}]"] = np.max(np.abs(direct.values - dual.values)) <= tau_dual(f, g)


def test_ac04_lax_closed_form_semigroup_commutation(criterion):
    with criterion(4, "linear datum closed form on 201x5x5, semigroup and commutation gaps") as c:
        grid = Grid(-4, 4, 801)
        p = HJProblem(H, H, GridFn.from_callable(lambda x: x, grid))
        ts = np.linspace(0, 1, 5)
        f = lax_field(p, ts, ts, (-1, 1))
        c["lattice_shape"] = f.w.shape == (5, 5, 201)
        exact = f.grid.nodes[None, None, :] - (ts[:, None, None] + ts[None, :, None]) / 2
        c["closed_form"] = np.max(np.abs(f.w - exact)) <= 1e-3
        problems = {
            "linear": p,
            "abs": HJProblem(H, H, GridFn.from_callable(np.abs, grid)),
            "sine_mixed": HJProblem(H, PowerEven(4), GridFn.from_callable(lambda x: 0.5 * np.sin(2 * x), grid)),
            "concave_mixed": HJProblem(H, PowerEven(4), GridFn.from_callable(lambda x: -np.abs(x), grid)),
        }
        for name, q in problems.items():
            for t in ((0.4, 0.4), (0.6, 0.2), (0.3, 0.5)):
                half = (t[0] / 2, t[1] / 2)
                c[f"semigroup.{name}{t}"] = semigroup_check(q, half, t, (-1, 1)).passed
                c[f"commutation.{name}{t}"] = commutation_check(q, t, (-1, 1)).passed
        c["tau_positive"] = tau_semigroup(p) > 0


def test_ac05_lipschitz(criterion):
    with criterion(5, "Lipschitz bound and sandwich at every lattice node, noise control fails") as c:
        grid = Grid(-4, 4, 801)
        ts = np.linspace(0, 0.4, 5)
        data = {
            "sine": lambda x: 0.5 * np.sin(2 * x),
            "abs": np.abs,
            "neg_abs": lambda x: -np.abs(x),
        }
        for name, fn in data.items():
            for h2 in (H, PowerEven(4)):
                f = lax_field(HJProblem(H, h2, GridFn.from_callable(fn, grid)), ts, ts, (-1, 1))
                rep = lipschitz_report(f)
                c[f"space.{name}.{h2!r}"] = rep.check("space").passed
                c[f"sandwich.{name}.{h2!r}"] = rep.check("sandwich").passed
        rng = np.random.default_rng(5)
        f = lax_field(HJProblem(H, H, GridFn.from_callable(data["sine"], grid)), ts, ts, (-1, 1))
        noisy = f.with_w(f.w + 0.1 * grid.dx * rng.standard_normal(f.w.shape))
        c["noise_control_fails"] = not lipschitz_report(noisy).check("space").passed


def test_ac06_pde_residual(criterion):
    with criterion(6, "PDE residual: smooth within 5(dt+dx), kink masked < 5%, n=2001, 9x9, < 60 s") as c:
        start = time.perf_counter()
        grid = Grid(-6, 6, 2001)
        ts = np.linspace(0.1, 0.4, 9)
        smooth = lax_field(HJProblem(H, H, GridFn.from_callable(lambda x: x * x / 2, grid)), ts, ts, (-1, 1))
        rep = residual_report(smooth)
        for which in (1, 2):
            c[f"smooth.h{which}.max"] = rep.check(f"h{which}.max").passed
        kinked = lax_field(HJProblem(H, H, GridFn.from_callable(lambda x: -np.abs(x), grid)), ts, ts, (-1, 1))
        rep = residual_report(kinked)
        for which in (1, 2):
            c[f"kinked.h{which}.max"] = rep.check(f"h{which}.max").passed
            c[f"kinked.h{which}.masked"] = rep.check(f"h{which}.masked").passed
            c[f"kinked.h{which}.mask_nonempty"] = pde_residual(kinked, which).masked_fraction > 0
        c["runtime"] = time.perf_counter() - start < 60.0


def test_ac07_lax_oleinik_vs_oracles(criterion):
    with criterion(7, "Riemann oracles: shock front, rarefaction fan, split Godunov in both orders") as c:
        grid = Grid(-3.5, 4.5, 4001)
        window = (-1, 2)
        ts = [0.25, 0.5, 1.0]
        shock = lax_oleinik_field(riemann_problem(1.0, 0.0, grid), ts, ts, window)
        fan = lax_oleinik_field(riemann_problem(0.0, 1.0, grid), ts, ts, window)
        width = window[1] - window[0]
        for i, a in enumerate(ts):
            for j, b in enumerate(ts):
                u = shock.slice(i, j)
                c[f"front{(a, b)}"] = abs(front_position(u, 0.5) - (a + b) / 2) <= 2 * grid.dx
                v = fan.slice(i, j)
                exact = v.with_values(np.clip(v.nodes / (a + b), 0, 1))
                c[f"fan{(a, b)}"] = l1_distance(v, exact) <= 0.01
                for name, f in (("shock", shock), ("fan", fan)):
                    for order in (H1_FIRST, H2_FIRST):
                        gv = split_evolve(f.problem.u0, H, H, (a, b), order, report=f.grid)
                        c[f"godunov.{name}.{order}{(a, b)}"] = l1_distance(f.slice(i, j), gv) <= 0.02 * width


@pytest.fixture(scope="module")
def coarse_fields():
    grid = Grid(-3, 4, 1401)
    ts = np.linspace(0, 1, 11)
    return [lax_oleinik_field(riemann_problem(ul, ur, grid), ts, ts, (-0.5, 1.5)) for ul, ur in ((1, 0), (0, 1))]


def test_ac08_oleinik(criterion, coarse_fields):
    with criterion(8, "Oleinik bound at every node pair, rarefaction attains 1/T within 1e-3") as c:
        shock, fan = coarse_fields
        c["shock"] = oleinik_report(shock).passed
        rep = oleinik_report(fan)
        c["rarefaction"] = rep.passed
        c["rarefaction_equality"] = rep.metrics["min_gap_to_bound"] <= 1e-3


FINE_GRID = Grid(-3, 4, 1401)
FINE_WINDOW = (-0.5, 1.5)
FINE_TS = np.linspace(0.2, 0.8, 61)
RADII = (0.15, 0.15, 0.12)


@pytest.fixture(scope="module")
def fine_shock():
    return lax_oleinik_field(riemann_problem(1.0, 0.0, FINE_GRID), FINE_TS, FINE_TS, FINE_WINDOW)


@pytest.fixture(scope="module")
def fine_bumps():
    # centres near the shock path x = (t1 + t2) / 2 so most supports straddle it
    return random_bumps(np.random.default_rng(9), 10, (0.2, 0.8), (0.1, 0.9), RADII)


def test_ac09_weak_form(criterion, fine_shock, fine_bumps):
    with criterion(9, "weak form |I| <= tau_weak on 10 random bumps, shifted shock exceeds it") as c:
        tau = tau_weak(fine_shock)
        for which in (1, 2):
            rep = weak_residual(fine_shock, fine_bumps, which)
            c[f"shock.h{which}"] = rep.passed
        moved = shift_front(fine_shock, 10, 1.0)
        centred = TestFn((0.5, 0.5, 0.5), RADII)
        for which in (1, 2):
            rep = weak_residual(moved, [centred], which)
            c[f"shifted_exceeds.h{which}"] = rep.check("bump0").value > tau and not rep.passed


def test_ac10_entropy(criterion, fine_shock, fine_bumps):
    with criterion(10, "Kruzkov entropy (17 constants): shock admissible, expansion shock caught") as c:
        pairs = kruzkov_family(H, H, -1, 1)
        c["seventeen_constants"] = len(pairs) == 17
        for which in (1, 2):
            c[f"shock.h{which}"] = entropy_residual(fine_shock, pairs, fine_bumps, which).passed
        report = FINE_GRID.subgrid(*FINE_GRID.index_window(*FINE_WINDOW))
        expansion = riemann_field(riemann_problem(0.0, 1.0, FINE_GRID), 0.0, 1.0, FINE_TS, FINE_TS, report)
        centred = [TestFn((0.5, 0.5, 0.5), RADII)]
        for which in (1, 2):
            rep = entropy_residual(expansion, pairs, centred, which)
            c[f"expansion_caught.h{which}"] = not rep.passed


def test_ac11_initial_trace(criterion):
    with criterion(11, "initial trace linear in h, fitted C stable within 25%") as c:
        grid = Grid(-3, 4, 1401)
        hs = [0.05, 0.1, 0.2]
        for ul, ur in ((1.0, 0.0), (0.0, 1.0)):
            f = lax_oleinik_field(riemann_problem(ul, ur, grid), hs, hs, (-1, 1.5))
            rep = initial_trace(f, ratio_tol=0.25)
            c[f"riemann({ul},{ur})"] = rep.passed


def _contraction_pair(t1, t2):
    grid = Grid(-3.5, 3.5, 3501)
    u0 = GridFn.from_callable(lambda x: np.where(x < 0, 1.0, 0.0), grid)
    x = grid.nodes
    pert = 0.1 * bump((x + 0.2) / 0.15) - 0.1 * bump((x - 0.2) / 0.15)
    fa = lax_oleinik_field(ClawProblem(H, H, u0), t1, t2, (-1.6, 1.6))
    fb = lax_oleinik_field(ClawProblem(H, H, u0.with_values(u0.values + pert)), t1, t2, (-1.6, 1.6))
    return fa, fb


def test_ac12_contraction(criterion):
    with criterion(12, "L1 contraction on both axes, identical data give both sides < 1e-10") as c:
        long_, short = np.linspace(0, 1, 21), np.array([0.0, 0.25, 0.5])
        zeta = Bump1D(0.5, 0.4)
        for axis, (t1, t2) in ((1, (long_, short)), (2, (short, long_))):
            fa, fb = _contraction_pair(t1, t2)
            rep = l1_contraction(fa, fb, zeta, axis, 1.0)
            c[f"axis{axis}.perturbed"] = rep.passed
            c[f"axis{axis}.nonnegative_slack"] = all(ch.value >= 0 for ch in rep.checks)
            c[f"axis{axis}.perturbation_visible"] = max(rep.metrics[f"{ch.name}.rhs"] for ch in rep.checks) > 0
            same = l1_contraction(fa, fa, zeta, axis, 1.0)
            c[f"axis{axis}.identical"] = all(
                same.metrics[f"{ch.name}.{side}"] < 1e-10 for ch in same.checks for side in ("lhs", "rhs")
            )


@pytest.mark.parametrize("name", ["burgers_shock", "mixed_flux"])
def test_ac13_determinism(criterion, tmp_path, name):
    with criterion(13, f"verify --suite all byte-identical across runs and --jobs 1/8 ({name})") as c:
        scn = str(SCENARIOS / f"{name}.scn")
        runs = {}
        for tag, jobs in (("a", 1), ("b", 1), ("c", 8)):
            out = tmp_path / tag
            main(["verify", "--suite", "all", "--scenario", scn, "--out", str(out), "--jobs", str(jobs)])
            (summary,) = out.glob("*.verify.summary")
            runs[tag] = summary.read_bytes()
        c["summary_nonempty"] = len(runs["a"]) > 0
        c["repeat_jobs1"] = runs["a"] == runs["b"]
        c["jobs1_vs_jobs8"] = runs["a"] == runs["c"]
