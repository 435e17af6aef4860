import subprocess
import sys
import textwrap

import pytest

from mtcl.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_NUMERICAL, EXIT_OK, main

BASE = """
[problem]
name = cli
h1 = quadratic 1
h2 = quadratic 1
initial = step 1 0
[grid]
x_min = -3
x_max = 4
n = 701
window = -0.5 1.5
[times]
t1 = 0 0.5 1
t2 = 0 1
"""


def scenario(tmp_path, text=BASE):
    path = tmp_path / "s.scn"
    path.write_text(textwrap.dedent(text))
    return str(path)


def test_solve_claw_ok_and_lists_files(tmp_path, capsys):
    rc = main(["solve-claw", "--scenario", scenario(tmp_path), "--out", str(tmp_path / "o")])
    out = capsys.readouterr().out.splitlines()
    assert rc == EXIT_OK
    wrote = [line for line in out if line.startswith("wrote ")]
    assert [w.rsplit("/", 1)[-1] for w in wrote] == ["cli.clawfield.csv", "cli.solve-claw.summary"]
    assert (tmp_path / "o" / "cli.clawfield.csv").exists()


def test_failing_check_exits_1(tmp_path, capsys):
    path = scenario(tmp_path, BASE + "[tolerances]\noracle = 1e-9\n")
    rc = main(["compare-oracle", "--scenario", path, "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert rc == EXIT_FAIL
    assert "FAIL oracle.l1[" in out


def exit_code(argv):
    # argparse rejections raise SystemExit; everything else returns a code
    try:
        return main(argv)
    except SystemExit as e:
        return e.code


@pytest.mark.parametrize(
    "argv, msg",
    [
        (["solve-hj", "--jobs", "0"], "--jobs must be at least 1"),
        (["launch"], "invalid choice"),
        (["verify", "--suite", "everything"], "invalid choice"),
    ],
)
def test_usage_errors_exit_2(tmp_path, capsys, argv, msg):
    assert exit_code(argv + ["--scenario", scenario(tmp_path)]) == EXIT_CONFIG
    assert msg in capsys.readouterr().err


def test_config_error_exits_2(tmp_path, capsys):
    path = scenario(tmp_path, BASE.replace("n = 701", "n = seven"))
    assert main(["solve-hj", "--scenario", path]) == EXIT_CONFIG
    assert "malformed integer 'seven' for n, line 10" in capsys.readouterr().err
    assert main(["solve-hj", "--scenario", str(tmp_path / "none.scn")]) == EXIT_CONFIG


def test_truncation_exits_3(tmp_path, capsys):
    path = scenario(tmp_path, BASE.replace("window = -0.5 1.5", "window = -2.95 3.9"))
    assert main(["solve-claw", "--scenario", path, "--out", str(tmp_path)]) == EXIT_NUMERICAL
    assert "truncation violated" in capsys.readouterr().err


def test_suite_selection(tmp_path, capsys):
    path = scenario(tmp_path, BASE.replace("initial = step 1 0", "initial = ramp -1 1 -1 1"))
    assert main(["verify", "--suite", "convex", "--scenario", path, "--out", str(tmp_path)]) == EXIT_OK
    lines = [line for line in capsys.readouterr().out.splitlines() if line.startswith(("PASS", "FAIL"))]
    assert lines and all(line.split()[1].startswith("convex.") for line in lines)


def test_mtcl_out_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("MTCL_OUT", str(tmp_path / "env"))
    assert main(["solve-hj", "--scenario", scenario(tmp_path)]) == EXIT_OK
    assert (tmp_path / "env" / "cli.solve-hj.summary").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "mtcl.cli", "solve-hj", "--scenario", scenario(tmp_path), "--out", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK, proc.stderr
    assert "wrote " in proc.stdout
