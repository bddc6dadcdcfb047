import csv
import io
import json
import math
import subprocess
import sys

import pytest

from ellclausen.cli import dumps, format_number, main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "ellclausen", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


class TestFormatting:
    def test_round_trip(self):
        for x in [math.pi, 1e-300, -2.5, 0.1, 1 / 3]:
            assert float(format_number(x)) == x
        assert format_number(math.nan) == "null"

    def test_dumps(self):
        obj = {"a": 0.1, "b": [1, True, None, "x"], "c": {"d": float("inf")}}
        assert json.loads(dumps(obj)) == {"a": 0.1, "b": [1, True, None, "x"], "c": {"d": None}}
        assert dumps(0.1) == "0.10000000000000001"


class TestEval:
    def test_catalan(self):
        code, out, _ = run("eval", "--family", "circular", "--order", "2", "--x", "1.5707963")
        assert code == 0
        obj = json.loads(out)
        assert abs(obj["value"] - 0.9159656) < 1e-7
        assert set(obj) >= {"family", "n", "x", "value", "err_bound", "terms_used"}
        assert "tau_im" not in obj

    def test_elliptic(self):
        code, out, _ = run("eval", "--family", "elliptic", "--order", "1", "--x", "3.1415927", "--tau-im", "1")
        assert code == 0
        obj = json.loads(out)
        assert abs(obj["value"] + 0.6968855) < 1e-7 and obj["tau_im"] == 1

    def test_singularity_exit_3(self):
        code, out, err = run("eval", "--family", "circular", "--order", "1", "--x", "0")
        assert code == 3 and out == "" and "singular" in err

    @pytest.mark.parametrize("args", [
        ["eval", "--family", "elliptic", "--order", "1", "--x", "1"],
        ["eval", "--family", "circular", "--order", "1", "--x", "1", "--tau-im", "1"],
        ["eval", "--family", "elliptic", "--order", "1", "--x", "1", "--tau-im", "-1"],
        ["eval", "--family", "parabolic", "--order", "1", "--x", "1"],
        ["eval", "--family", "circular", "--order", "two", "--x", "1"],
        ["eval", "--family", "circular", "--order", "2", "--x", "1", "--tau", "1j"],
        ["--tau", "0.5+1j", "eval", "--family", "circular", "--order", "2", "--x", "1"],
        ["eval", "--family", "circular", "--order", "2", "--x", "1", "--tol", "0"],
        ["eval", "--family", "circular", "--order", "2", "--x", "1", "--max-terms", "3"],
        ["frobnicate"],
        [],
    ])
    def test_usage_errors(self, args):
        code, out, err = run(*args)
        assert code == 2 and out == ""

    def test_global_flags_either_side(self):
        a = run("--tol", "1e-10", "eval", "--family", "hyperbolic", "--order", "3", "--x", "5")
        b = run("eval", "--family", "hyperbolic", "--order", "3", "--x", "5", "--tol", "1e-10")
        assert a[0] == b[0] == 0 and a[1] == b[1]

    def test_tight_budget_is_numeric_failure(self):
        code, _, err = run("eval", "--family", "elliptic", "--order", "2", "--x", "1",
                           "--tau-im", "0.6", "--max-terms", "8")
        assert code == 3 and "numerical failure" in err


class TestTable:
    def test_circular(self):
        code, out, _ = run("table", "--family", "circular", "--order", "2", "--x-min", "0",
                           "--x-max", "6.2831853", "--steps", "5")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["x", "value", "err_bound", "diagnostic"]
        assert len(rows) == 6 and all(len(r) == 4 for r in rows)
        assert float(rows[1][1]) == 0.0

    def test_boundary_value_row(self):
        code, out, _ = run("table", "--family", "elliptic", "--order", "3", "--tau-im", "1",
                           "--x-min", "0", "--x-max", "1", "--steps", "2")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0 and len(rows) == 2
        assert abs(float(rows[0]["value"]) - 1.2057997) < 1e-7

    def test_singular_rows(self):
        code, out, _ = run("table", "--family", "circular", "--order", "1", "--x-min", "0",
                           "--x-max", "6.283185307179586", "--steps", "3")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert rows[0]["value"] == "" and "singular" in rows[0]["diagnostic"]
        assert rows[1]["value"] != "" and rows[1]["diagnostic"] == ""
        assert rows[2]["value"] == ""

    def test_out_file(self, tmp_path):
        path = tmp_path / "t.csv"
        code, out, _ = run("table", "--family", "hyperbolic", "--order", "2", "--x-min", "0",
                           "--x-max", "4", "--steps", "9", "--out", str(path))
        assert code == 0 and out == ""
        assert len(path.read_text().splitlines()) == 10

    @pytest.mark.parametrize("extra", [["--steps", "1", "--x-min", "0", "--x-max", "1"],
                                       ["--steps", "3", "--x-min", "1", "--x-max", "1"]])
    def test_validation(self, extra):
        code, out, _ = run("table", "--family", "circular", "--order", "2", *extra)
        assert code == 2 and out == ""


class TestKernel:
    def test_circular_limit(self):
        code, out, _ = run("kernel", "--coeffs", "2", "--tau-im", "50")
        obj = json.loads(out)
        assert code == 0 and obj["t"] == 50
        routes = {r["route"]: r for r in obj["results"]}
        assert set(routes) == {"lambert", "taylor"}
        for r in routes.values():
            assert abs(r["coeffs"]["c2"] - math.pi ** 2 / 3) < 1e-9
            assert abs(r["coeffs"]["c4"] - math.pi ** 4 / 90) < 1e-9

    def test_unit_modulus(self):
        code, out, _ = run("kernel", "--coeffs", "1", "--tau-im", "1")
        obj = json.loads(out)
        assert code == 0
        assert abs(obj["results"][0]["coeffs"]["c2"] - 3.1415927) < 1e-6
        assert abs(obj["deltas"]["c2"]) <= 1e-8

    def test_small_t_is_reduced(self):
        code, out, _ = run("kernel", "--coeffs", "3", "--tau-im", "0.25")
        obj = json.loads(out)
        assert code == 0 and obj["results"][0]["route"] == "lambert-s"

    @pytest.mark.parametrize("m", ["9", "0"])
    def test_cap(self, m):
        assert run("kernel", "--coeffs", m)[0] == 2


class TestVerify:
    def test_all(self):
        code, out, _ = run("verify", "all", "--tau-im", "1")
        obj = json.loads(out)
        assert code == 0 and obj["suite"] == "all"
        assert all(c["pass"] and c["max_residual"] <= c["bound"] for c in obj["checks"])
        assert any("2^(1-2m)" in n for n in obj["notes"])

    def test_degeneration(self):
        code, out, _ = run("verify", "degeneration", "--m-max", "3", "--tau-im", "5")
        obj = json.loads(out)
        assert code == 0
        b = [c for c in obj["checks"] if "-vs-zeta" in c["name"]]
        assert len(b) == 3 and all(c["max_residual"] <= 1e-12 for c in b)

    def test_hyperbolic_recursion(self):
        code, out, _ = run("verify", "recursion", "--family", "hyperbolic")
        obj = json.loads(out)
        assert code == 0 and len(obj["checks"]) == 2
        assert all("hyperbolic" in c["name"] for c in obj["checks"])

    def test_failing_suite_exit_code(self, monkeypatch, capsys):
        import ellclausen.cli as cli
        from ellclausen.suites import Check, SuiteReport

        monkeypatch.setattr(cli, "run_suite", lambda *a, **k: SuiteReport("theta", [Check("a", 2.0, 1.0)]))
        assert main(["verify", "theta"]) == 1
        assert json.loads(capsys.readouterr().out)["checks"][0]["pass"] is False

    def test_bad_suite(self):
        assert run("verify", "everything")[0] == 2


@pytest.mark.parametrize("args", [
    ["eval", "--family", "elliptic", "--order", "3", "--x", "0.7", "--tau-im", "0.3"],
    ["table", "--family", "elliptic", "--order", "2", "--tau-im", "0.8", "--x-min", "-1",
     "--x-max", "7", "--steps", "17"],
    ["kernel", "--coeffs", "8", "--tau-im", "0.7"],
    ["verify", "boundary", "--tau-im", "1.5"],
])
def test_byte_stable(args):
    first = run(*args)
    second = run(*args)
    assert first[0] == 0 and first == second
