import json
import subprocess
import sys

import numpy as np
import pytest

from gaugesep.cli import dumps, main, parse_problem


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write(tmp_path, name, payload) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


DISK_PROBLEM = {
    "version": 1,
    "dimension": 2,
    "A": {"kind": "ball", "center": [2.0, 0.0], "radius": 1.4142135623730951},
    "S": {"basis": []},
    "x": [1.0, 0.0],
}


class TestParseProblem:
    def test_bundled_names(self):
        for name in ("example1", "example2", "example3_quotient"):
            problem = parse_problem(name)
            assert problem.dimension in (2, 3)

    def test_example2_contents(self):
        problem = parse_problem("example2")
        assert problem.dimension == 3
        np.testing.assert_allclose(problem.x, [1.0, -3.0, 0.0])
        assert problem.s.dim == 1

    def test_missing_file_raises(self):
        with pytest.raises(FileNotFoundError):
            parse_problem("/nonexistent/problem.json")


class TestExitCodes:
    def test_missing_file_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "separate", "--input", "/nonexistent/problem.json")
        assert code == 2
        assert "missing file" in err

    def test_bad_json_exit_3(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"version": 1,,}')
        code, _, err = run_cli(capsys, "separate", "--input", str(path))
        assert code == 3
        assert "line" in err

    def test_dimension_mismatch_exit_3(self, capsys, tmp_path):
        bad = dict(DISK_PROBLEM)
        bad["A"] = {"kind": "ball", "center": [2.0, 0.0, 0.0], "radius": 1.0}
        code, _, err = run_cli(capsys, "separate", "--input", write(tmp_path, "bad.json", bad))
        assert code == 3
        assert "A.center" in err

    def test_nonstrict_rows_exit_3(self, capsys, tmp_path):
        bad = {
            "version": 1,
            "dimension": 2,
            "A": {"kind": "hpoly", "rows": [{"a": [0.0, 1.0], "b": 0.0, "strict": False}]},
            "S": {"basis": []},
        }
        code, _, err = run_cli(capsys, "separate", "--input", write(tmp_path, "bad.json", bad))
        assert code == 3
        assert "strict" in err

    def test_wrong_version_exit_3(self, capsys, tmp_path):
        bad = dict(DISK_PROBLEM)
        bad["version"] = 2
        code, _, err = run_cli(capsys, "separate", "--input", write(tmp_path, "v2.json", bad))
        assert code == 3

    def test_intersecting_inputs_exit_4(self, capsys, tmp_path):
        bad = {
            "version": 1,
            "dimension": 2,
            "A": {"kind": "ball", "center": [0.0, 0.5], "radius": 1.0},
            "S": {"basis": []},
        }
        code, _, err = run_cli(capsys, "separate", "--input", write(tmp_path, "meet.json", bad))
        assert code == 4
        assert "precondition" in err

    def test_solver_failure_exit_5(self, capsys, tmp_path):
        # the override passes the basis precheck but is not balanced, so the
        # extension's terminal domination gate fires
        bad = {
            "version": 1,
            "dimension": 3,
            "A": {"kind": "ball", "center": [9.0, 9.0, 9.0], "radius": 1.0},
            "S": {"basis": [[1.0, -1.0, 0.0]]},
            "x": [1.0, 0.0, 0.0],
            "seminorm": {"kind": "polyhedral", "rows": [{"a": [1.0, 1.0, 0.0], "b": 1.0}]},
        }
        code, _, err = run_cli(capsys, "extend", "--input", write(tmp_path, "solver.json", bad))
        assert code == 5
        assert "solver" in err

    def test_gauge_without_point_exit_4(self, capsys):
        code, _, err = run_cli(capsys, "gauge", "--input", "example1")
        assert code == 4

    def test_missing_input_exit_4(self, capsys):
        code, _, err = run_cli(capsys, "separate")
        assert code == 4


class TestSubcommands:
    def test_separate_example2(self, capsys):
        code, out, _ = run_cli(capsys, "separate", "--input", "example2")
        assert code == 0
        doc = json.loads(out)
        np.testing.assert_allclose(np.abs(doc["normal"]), [1.0, 0.0, 0.0], atol=1e-8)
        assert doc["certificate"]["valid"] is True
        assert doc["gamma_history"][0]["hi"] - doc["gamma_history"][0]["lo"] < 1e-8

    def test_gauge_example1_taxicab_value(self, capsys):
        code, out, _ = run_cli(capsys, "gauge", "--input", "example1", "--point", "3,-4")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] == pytest.approx(7.0, abs=1e-6)

    def test_conic_example1(self, capsys):
        code, out, _ = run_cli(capsys, "conic", "--input", "example1", "--point", "2,1")
        assert code == 0
        assert json.loads(out)["member"] is True
        code, out, _ = run_cli(capsys, "conic", "--input", "example1", "--point", "1,2")
        assert json.loads(out)["member"] is False

    def test_extend_example2(self, capsys):
        code, out, _ = run_cli(capsys, "extend", "--input", "example2")
        assert code == 0
        doc = json.loads(out)
        np.testing.assert_allclose(doc["g"], [1.0, 0.0, 0.0], atol=1e-8)
        assert doc["domination_violation"] <= 1e-6

    def test_roundtrip_example2(self, capsys):
        code, out, _ = run_cli(capsys, "roundtrip", "--input", "example2")
        assert code == 0
        doc = json.loads(out)
        np.testing.assert_allclose(doc["g_geometric"], [1.0, 0.0, 0.0], atol=1e-8)
        assert doc["domain_agreement"] < 1e-8
        assert doc["domination_violation"] <= 1e-6

    def test_verify_with_explicit_normal(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--input", "example1", "--normal", "0,1")
        assert code == 0
        doc = json.loads(out)
        assert doc["certificate"]["valid"] is False  # the x-axis crosses the disk

    def test_verify_default_runs_pipeline(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--input", "example2")
        assert code == 0
        assert json.loads(out)["certificate"]["valid"] is True

    def test_oracle_fixture_problem(self, capsys, tmp_path):
        problem = {
            "version": 1,
            "dimension": 2,
            "A": {"kind": "oracle", "name": "offset-disk"},
            "S": {"basis": []},
            "x": [1.0, 0.0],
        }
        path = write(tmp_path, "oracle.json", problem)
        code, out, _ = run_cli(capsys, "conic", "--input", path, "--point", "2,1")
        assert code == 0
        assert json.loads(out)["member"] is True
        code, out, _ = run_cli(capsys, "gauge", "--input", path, "--point", "1,0")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-6)

    def test_unknown_oracle_name_exit_3(self, capsys, tmp_path):
        problem = {
            "version": 1,
            "dimension": 2,
            "A": {"kind": "oracle", "name": "no-such-fixture"},
            "S": {"basis": []},
        }
        code, _, err = run_cli(capsys, "conic", "--input", write(tmp_path, "o.json", problem), "--point", "1,0")
        assert code == 3

    def test_render_writes_svg(self, capsys, tmp_path):
        target = tmp_path / "out.svg"
        code, out, _ = run_cli(capsys, "render", "--input", "example1", "--svg", str(target))
        assert code == 0
        text = target.read_text()
        assert text.startswith("<svg")
        assert "circle" in text

    def test_render_polyhedron_draws_polygon(self, capsys, tmp_path):
        target = tmp_path / "poly.svg"
        code, _, _ = run_cli(capsys, "render", "--input", "example3_quotient", "--svg", str(target))
        assert code == 0
        assert "polygon" in target.read_text()

    def test_gauge_tolerance_flag(self, capsys):
        code, out, _ = run_cli(capsys, "separate", "--input", "example1", "--tol", "1e-8")
        assert code == 0
        assert json.loads(out)["certificate"]["valid"] is True

    def test_output_flag_writes_file(self, capsys, tmp_path):
        target = tmp_path / "result.json"
        code, out, _ = run_cli(capsys, "gauge", "--input", "example1", "--point", "1,1", "--output", str(target))
        assert code == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert doc["command"] == "gauge"

    def test_repro_passes(self, capsys):
        code, out, _ = run_cli(capsys, "repro")
        assert code == 0
        lines = [line for line in out.splitlines() if line.startswith("REPRO")]
        assert len(lines) == 3
        assert all(line.endswith("PASS") for line in lines)

    def test_gamma_rule_flag(self, capsys):
        code, out, _ = run_cli(capsys, "separate", "--input", "example1", "--gamma-rule", "midpoint")
        assert code == 0
        doc = json.loads(out)
        assert doc["g"][1] == pytest.approx(0.0, abs=1e-6)


class TestDeterminism:
    def strip(self, out: str) -> dict:
        doc = json.loads(out)
        doc.pop("timings")
        return doc

    def test_byte_identical_modulo_timings(self, capsys):
        _, first, _ = run_cli(capsys, "separate", "--input", "example1", "--seed", "7")
        _, second, _ = run_cli(capsys, "separate", "--input", "example1", "--seed", "7")
        assert dumps(self.strip(first)) == dumps(self.strip(second))

    def test_seed_field_recorded(self, capsys):
        _, out, _ = run_cli(capsys, "separate", "--input", "example1", "--seed", "11")
        assert json.loads(out)["seed"] == 11


class TestGoldenDiff:
    def test_first_diverging_field_reported(self):
        from gaugesep.cli import _diff_docs

        golden = {"a": 1.0, "b": {"c": [1.0, 2.0]}}
        actual = {"a": 1.0, "b": {"c": [1.0, 2.5]}}
        field, want, got = _diff_docs(golden, actual)
        assert field == "$.b.c[1]"
        assert want == 2.0 and got == 2.5

    def test_tolerant_to_tiny_float_drift(self):
        from gaugesep.cli import _diff_docs

        assert _diff_docs({"x": 1.0}, {"x": 1.0 + 1e-12}) is None

    def test_missing_key_reported(self):
        from gaugesep.cli import _diff_docs

        field, want, got = _diff_docs({"x": 1.0}, {})
        assert field == "$.x" and got == "<absent>"


class TestFloatSerialization:
    def test_17_digit_roundtrip(self):
        values = [np.pi, 1 / 3, 1e-300, 7.0]
        text = dumps({"v": values})
        back = json.loads(text)["v"]
        assert back == [float(f"{v:.17g}") for v in values]
        assert back[0] == np.pi

    def test_infinity_encoding(self):
        assert '"inf"' in dumps({"a": np.inf})


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "gaugesep", "conic", "--input", "example2", "--point", "1,0,0"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["member"] is True
