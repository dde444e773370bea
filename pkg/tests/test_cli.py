import os
import subprocess
import sys

import pytest

from girthkit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(line):
    tag, *rest = line.split()
    return tag, dict(kv.split("=", 1) for kv in rest)


@pytest.fixture
def triangle(tmp_path):
    p = tmp_path / "tri.txt"
    p.write_text("3 3 int\n0 1 1\n1 2 1\n0 2 1\n")
    return str(p)


def test_exact_on_triangle(capsys, triangle):
    code, out, _ = run(capsys, "exact", "--input", triangle)
    assert code == 0
    tag, f = fields(out.splitlines()[1])
    assert tag == "result" and f["weight"] == "3" and f["ratio"] == "1"


def test_approx2_on_triangle(capsys, triangle):
    code, out, _ = run(capsys, "approx2", "--input", triangle, "--M", "1")
    _, f = fields(out.splitlines()[1])
    assert code == 0 and f["weight"] == "3" and f["within"] == "1" and float(f["ratio"]) <= 2


def test_mode_mismatch(capsys, tmp_path):
    p = tmp_path / "r.txt"
    p.write_text("3 3 real\n0 1 1\n1 2 1\n0 2 1\n")
    code, _, err = run(capsys, "approx2", "--input", str(p))
    assert code == 2 and "integer" in err


def test_parse_error(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("3 2 int\n0 0 1\n1 2 1\n")
    code, _, err = run(capsys, "exact", "--input", str(p))
    assert code == 2 and "self-loop" in err


def test_oracle_cap_noted(capsys):
    code, out, _ = run(capsys, "approx2eps", "--n", "30", "--p", "0.3", "--oracle-cap", "10")
    assert code == 0
    assert "note oracle=skipped reason=n>10" in out
    assert "ratio=" not in out


def test_validate_batch_and_determinism(capsys):
    args = ["validate", "--n", "25", "--count", "3", "--p", "0.3", "--max-weight", "100", "--seed", "4"]
    code, a, _ = run(capsys, *args)
    assert code == 0 and "summary instances=3 failures=0" in a
    _, b, _ = run(capsys, *args)
    assert a == b
    _, c, _ = run(capsys, *args, "--workers", "2")
    assert a == c


def test_every_algorithm_line(capsys):
    for algo in ("approx2eps", "poly", "dense8", "approx4"):
        code, out, _ = run(capsys, algo, "--weights", "real", "--n", "30", "--p", "0.2",
                           "--compare-exact")
        assert code == 0
        rows = [fields(ln)[1] for ln in out.splitlines() if ln.startswith("result")]
        assert [r["algo"] for r in rows] == ["exact", algo]
        assert all(r["valid"] == "1" and r["within"] == "1" for r in rows)


def test_approx4_integer_factor(capsys):
    code, out, _ = run(capsys, "approx4", "--eps", "0", "--n", "30", "--p", "0.3")
    _, f = fields(out.splitlines()[1])
    assert code == 0 and f["factor"] == "4" and float(f["ratio"]) <= 4


def test_gen_round_trip(capsys, tmp_path):
    p = tmp_path / "g.txt"
    code, _, _ = run(capsys, "gen", "--kind", "grid", "--n", "9", "--weights", "unit", "--output", str(p))
    assert code == 0
    code, out, _ = run(capsys, "exact", "--input", str(p))
    assert fields(out.splitlines()[1])[1]["weight"] == "4"


def test_timing_flag_only_adds_seconds(capsys, triangle):
    _, out, _ = run(capsys, "exact", "--input", triangle, "--timing")
    assert "seconds=" in out
    _, out, _ = run(capsys, "exact", "--input", triangle)
    assert "seconds=" not in out


def test_bench_small(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "32,64,128", "--p", "0.5")
    lines = out.splitlines()
    assert sum(ln.startswith("bench") for ln in lines) == 3
    tag, f = fields(lines[-1])
    assert tag == "fit" and "beta" in f
    assert code == (0 if f["pass"] == "1" else 1)


def test_console_script_matches_python_backend(tmp_path):
    """Reports are byte-identical with numba disabled."""
    args = [sys.executable, "-m", "girthkit.cli", "validate", "--n", "20", "--count", "2", "--p", "0.3"]
    a = subprocess.run(args, capture_output=True, text=True, check=True).stdout
    env = dict(os.environ, GIRTHKIT_DISABLE_NUMBA="1")
    b = subprocess.run(args, capture_output=True, text=True, check=True, env=env).stdout
    assert a == b and "failures=0" in a
