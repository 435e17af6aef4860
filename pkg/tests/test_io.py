import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import riemann_problem
from mtcl.claw import lax_oleinik_field
from mtcl.errors import GridError
from mtcl.grid import Grid, GridFn
from mtcl.hamiltonians import Quadratic
from mtcl.hj import HJProblem, lax_field
from mtcl.io import read_field, read_gridfn, write_clawfield, write_gridfn, write_hjfield, write_summary
from mtcl.report import Report, fmt


@settings(max_examples=40, deadline=None)
@given(
    values=arrays(
        np.float64,
        st.integers(2, 30),
        elements=st.one_of(st.floats(allow_nan=False, allow_infinity=False), st.just(np.inf)),
    )
)
def test_gridfn_round_trip_is_bit_exact(tmp_path_factory, values):
    if np.isinf(values).all():
        values[0] = 0.0
    f = GridFn(Grid(-1.3, 2.7, values.size), values)
    path = tmp_path_factory.mktemp("io") / "f.csv"
    write_gridfn(f, path)
    g = read_gridfn(path)
    assert g.grid == f.grid
    np.testing.assert_array_equal(g.values, f.values)


def test_gridfn_format(tmp_path):
    path = tmp_path / "f.csv"
    write_gridfn(GridFn(Grid(0, 1, 3), [0.1, np.inf, 2.0]), path)
    assert path.read_text().splitlines() == ["# gridfn v1 n=3 xmin=0.0 xmax=1.0", "x,value", "0.0,0.1", "0.5,inf", "1.0,2.0"]


@pytest.mark.parametrize(
    "text, msg",
    [
        ("", "empty file"),
        ("# gridfn v2\nx,value\n", "line 1"),
        ("# gridfn v1 n=2 xmin=0 xmax=1\nx,y\n0,0\n1,1\n", "line 2"),
        ("# gridfn v1 n=3 xmin=0 xmax=1\nx,value\n0,0\n1,1\n", "n=3 but 2 rows"),
        ("# gridfn v1 n=2 xmin=0 xmax=1\nx,value\n0,0\n1,abc\n", "line 4: malformed number"),
        ("# gridfn v1 n=2 xmin=0 xmax=1\nx,value\n0,0\n1,1,2\n", "line 4: expected 2 columns"),
        ("# gridfn v1 n=2 xmin=0 xmax=1\nx,value\n0,nan\n1,1\n", "nan at node 0"),
    ],
)
def test_gridfn_errors(tmp_path, text, msg):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(GridError, match=msg):
        read_gridfn(path)


def test_hjfield_round_trip(tmp_path):
    h = Quadratic()
    g = GridFn.from_callable(np.abs, Grid(-3, 3, 301))
    f = lax_field(HJProblem(h, h, g), [0, 0.25], [0, 0.5, 1.0], (-0.5, 0.5))
    path = tmp_path / "w.csv"
    write_hjfield(f, path)
    lines = path.read_text().splitlines()
    assert lines[:2] == ["# hjfield v1", "t1,t2,x,w,y_min"]
    t = read_field(path)
    assert t.kind == "hjfield"
    np.testing.assert_array_equal(t.values, f.w)
    np.testing.assert_array_equal(t.y_min, f.y_nodes())
    np.testing.assert_array_equal(t.t2, [0, 0.5, 1.0])


def test_clawfield_round_trip(tmp_path):
    p = riemann_problem(1.0, 0.0, Grid(-3, 4, 701))
    f = lax_oleinik_field(p, [0, 0.5], [0.25], (-0.5, 1.0))
    path = tmp_path / "u.csv"
    write_clawfield(f, path)
    t = read_field(path)
    assert t.kind == "clawfield"
    np.testing.assert_array_equal(t.values, f.u)
    assert path.read_text().splitlines()[1] == "t1,t2,x,u,y_min"


def test_field_errors(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("# other v1\n")
    with pytest.raises(GridError, match="unknown field header"):
        read_field(path)
    path.write_text("# clawfield v1\nt1,t2,x,u,y_min\n0,0,0,1,0\n0,0,1,1,0\n0,1,0,1,0\n")
    with pytest.raises(GridError, match="full t1 x t2 x x lattice"):
        read_field(path)


def test_summary(tmp_path):
    rep = Report("demo")
    rep.add("ok", True, 0.5, 1.0)
    rep.add("bad", False)
    rep.metrics["count"] = 3
    path = tmp_path / "s.summary"
    write_summary(rep.summary(), path)
    assert path.read_text() == "demo.ok=PASS\ndemo.ok.value=0.5\ndemo.ok.bound=1.0\ndemo.bad=FAIL\ndemo.count=3\n"
    assert rep.lines() == ["PASS demo.ok: value=0.5 bound=1.0", "FAIL demo.bad"]
    assert not rep.passed


@pytest.mark.parametrize("v, text", [(True, "true"), (3, "3"), (0.1, "0.1"), (np.inf, "inf"), (-np.inf, "-inf"), ("x", "x")])
def test_fmt(v, text):
    assert fmt(v) == text
