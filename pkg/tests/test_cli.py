"""End-to-end CLI tests: output schemas, determinism, exit codes."""

import json
import subprocess
import sys

import numpy as np
import pytest

EXAMPLE_COV = "[[1,1],[1,26]]"
PAPER_SPEC = '{"kind":"paper_example","sigma":1.0,"k":25.0,"seed":42}'


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "mvcheb", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def run_json(*args, cwd=None):
    proc = run_cli(*args, cwd=cwd)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


class TestEstimate:
    def test_two_row_variance(self, tmp_path):
        path = tmp_path / "two.csv"
        path.write_text("x1\n-1.0\n1.0\n")
        out = run_json("estimate", "--input", str(path), "--ddof", "1")
        assert out["covariance"] == [[2.0]]
        assert out["mean"] == [0.0]
        assert out["trace"] == 2.0
        assert out["det"] == pytest.approx(2.0, rel=1e-12)

    def test_round_trip_with_sample(self, tmp_path):
        csv_path = tmp_path / "draws.csv"
        proc = run_cli("sample", "--spec", PAPER_SPEC, "--n", "100000", "--out", str(csv_path))
        assert proc.returncode == 0, proc.stderr
        out = run_json("estimate", "--input", str(csv_path))
        target = np.array([[1.0, 1.0], [1.0, 26.0]])
        se = np.sqrt((np.outer(np.diag(target), np.diag(target)) + target**2) / 100000)
        assert np.all(np.abs(np.array(out["covariance"]) - target) <= 5 * se)
        assert np.all(np.abs(out["mean"]) <= 5 * np.sqrt(np.diag(target) / 100000))

    def test_empty_file_exits_2(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("")
        assert run_cli("estimate", "--input", str(path)).returncode == 2

    def test_ragged_file_exits_2(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("x1,x2\n1.0,2.0\n3.0\n")
        proc = run_cli("estimate", "--input", str(path))
        assert proc.returncode == 2
        assert "line 3" in proc.stderr

    def test_degenerate_covariance_exits_3(self, tmp_path):
        path = tmp_path / "flat.csv"
        path.write_text("x1,x2\n0.0,0.0\n1.0,1.0\n2.0,2.0\n")
        assert run_cli("estimate", "--input", str(path)).returncode == 3

    def test_missing_input_exits_2(self, tmp_path):
        assert run_cli("estimate", "--input", str(tmp_path / "nope.csv")).returncode == 2


class TestRatio:
    def test_example_matrix(self):
        out = run_json("ratio", "--cov", EXAMPLE_COV)
        assert out["ratio"] == pytest.approx(2.7, rel=1e-12)
        assert out["trace"] == 27.0 and out["det"] == pytest.approx(25.0, rel=1e-12)

    def test_identity(self):
        assert run_json("ratio", "--cov", "[[1,0],[0,1]]")["ratio"] == pytest.approx(1.0)

    def test_diag_1_4(self):
        assert run_json("ratio", "--cov", "[[1,0],[0,4]]")["ratio"] == pytest.approx(1.25, rel=1e-12)

    def test_cov_from_file(self, tmp_path):
        path = tmp_path / "cov.json"
        path.write_text(EXAMPLE_COV)
        assert run_json("ratio", "--cov", str(path))["ratio"] == pytest.approx(2.7, rel=1e-12)

    def test_non_pd_exits_3(self):
        assert run_cli("ratio", "--cov", "[[1,2],[2,1]]").returncode == 3

    def test_malformed_json_exits_2(self):
        assert run_cli("ratio", "--cov", "[[1,2],[2,").returncode == 2


class TestBound:
    def test_dimension_bound(self):
        out = run_json("bound", "--dim", "2", "--eps", "20")
        assert out["raw"] == pytest.approx(0.1, rel=1e-15)
        assert out["clamped"] == out["raw"]

    def test_classical(self):
        out = run_json("bound", "--classical", "--var", "27", "--eps", "16.43168")
        assert out["raw"] == pytest.approx(0.1, rel=1e-4)

    def test_zero_eps_exits_2(self):
        assert run_cli("bound", "--dim", "2", "--eps", "0").returncode == 2

    def test_clamping(self):
        assert run_json("bound", "--dim", "2", "--eps", "1")["clamped"] == 1.0


class TestRegion:
    def test_ellipsoid_schema(self):
        out = run_json("region", "--kind", "ellipsoid", "--cov", EXAMPLE_COV, "--delta", "0.1")
        assert out["kind"] == "ellipsoid"
        assert out["threshold"] == pytest.approx(20.0, rel=1e-15)
        assert out["center"] == [0.0, 0.0]
        assert out["cov"] == [[1.0, 1.0], [1.0, 26.0]]
        assert out["delta"] == 0.1

    def test_sphere_schema(self):
        out = run_json("region", "--kind", "sphere", "--cov", EXAMPLE_COV, "--delta", "0.1")
        assert out == {"kind": "sphere", "center": [0.0, 0.0], "radius_sq": 270.0}

    def test_delta_out_of_range_exits_3(self):
        proc = run_cli("region", "--kind", "sphere", "--cov", EXAMPLE_COV, "--delta", "1.5")
        assert proc.returncode == 3


class TestCoverage:
    def test_paper_example_guarantee(self):
        out = run_json("coverage", "--spec", PAPER_SPEC, "--delta", "0.1", "--n", "1000")
        assert out["ellipsoid"]["empirical_coverage"] >= 0.9
        assert out["sphere"]["empirical_coverage"] >= 0.9
        assert out["ellipsoid"]["n_samples"] == 1000

    def test_byte_identical_reruns(self):
        args = ("coverage", "--spec", PAPER_SPEC, "--delta", "0.1", "--n", "2000")
        a, b = run_cli(*args), run_cli(*args)
        assert a.returncode == 0 and a.stdout == b.stdout

    def test_streams_equal_hit_for_hit(self):
        args = ("coverage", "--spec", PAPER_SPEC, "--delta", "0.1", "--n", "10000")
        one = run_cli(*args, "--streams", "1")
        four = run_cli(*args, "--streams", "4")
        assert one.returncode == 0
        assert one.stdout == four.stdout

    def test_seed_flag_overrides_spec_seed(self):
        args = ("sample", "--spec", PAPER_SPEC, "--n", "20")
        default = run_cli(*args)
        reseeded = run_cli(*args, "--seed", "7")
        same = run_cli(*args, "--seed", "42")
        assert default.stdout == same.stdout  # spec carries seed 42
        assert default.stdout != reseeded.stdout

    def test_estimated_mode(self):
        out = run_json(
            "coverage", "--spec", PAPER_SPEC, "--delta", "0.1", "--n", "2000", "--estimated"
        )
        assert set(out) == {"ellipsoid", "sphere", "estimated"}
        assert set(out["estimated"]) == {"ellipsoid", "sphere"}

    def test_bad_kind_exits_2(self):
        spec = '{"kind":"laplace","seed":1}'
        assert run_cli("coverage", "--spec", spec, "--delta", "0.1", "--n", "10").returncode == 2

    def test_bad_delta_exits_3(self):
        assert (
            run_cli("coverage", "--spec", PAPER_SPEC, "--delta", "2.0", "--n", "10").returncode
            == 3
        )


class TestTail:
    def test_schema_and_bound(self):
        out = run_json("tail", "--spec", PAPER_SPEC, "--eps", "2,4,20", "--n", "5000")
        assert list(out) == [
            "eps_grid", "empirical_tail", "new_bound", "classical_tail", "classical_bound",
        ]
        assert out["new_bound"][2] == pytest.approx(0.1, rel=1e-12)
        assert out["empirical_tail"][2] <= 0.01

    def test_empty_grid_exits_2(self):
        assert run_cli("tail", "--spec", PAPER_SPEC, "--eps", ",", "--n", "10").returncode == 2


class TestFigure:
    def test_default_run_manifest(self, tmp_path):
        proc = run_cli("figure", "--out-prefix", str(tmp_path / "fig_"), "--seed", "0")
        assert proc.returncode == 0, proc.stderr
        manifest = json.loads((tmp_path / "fig_manifest.json").read_text())
        assert manifest["threshold"] == pytest.approx(20.0, rel=1e-15)
        assert manifest["radius_sq"] == pytest.approx(270.0, rel=1e-15)
        assert manifest["params"] == {
            "sigma": 1.0, "k": 25.0, "delta": 0.1, "seed": 0, "N": 1000,
        }
        samples = (tmp_path / "fig_samples.csv").read_text().splitlines()
        assert samples[0] == "x,y" and len(samples) == 1001
        assert len((tmp_path / "fig_ellipse.csv").read_text().splitlines()) == 257

    def test_rerun_identical_files(self, tmp_path):
        for sub in ("a", "b"):
            d = tmp_path / sub
            d.mkdir()
            assert (
                run_cli("figure", "--out-prefix", str(d / "fig_"), "--seed", "3").returncode
                == 0
            )
        for name in ("samples.csv", "ellipse.csv", "circle.csv", "manifest.json"):
            assert (tmp_path / "a" / f"fig_{name}").read_bytes() == (
                tmp_path / "b" / f"fig_{name}"
            ).read_bytes()

    def test_four_point_circle_is_axis_aligned(self, tmp_path):
        proc = run_cli("figure", "--points", "4", "--out-prefix", str(tmp_path / "q_"))
        assert proc.returncode == 0
        rows = (tmp_path / "q_circle.csv").read_text().splitlines()[1:]
        pts = np.array([[float(v) for v in r.split(",")] for r in rows])
        r = np.sqrt(270.0)
        assert np.allclose(pts, [[r, 0], [0, r], [-r, 0], [0, -r]], atol=1e-12)

    def test_unwritable_prefix_exits_4(self, tmp_path):
        prefix = str(tmp_path / "missing" / "sub" / "fig_")
        proc = run_cli("figure", "--out-prefix", prefix)
        assert proc.returncode == 4
        assert not (tmp_path / "missing").exists()


class TestSample:
    def test_row_count_and_header(self):
        proc = run_cli("sample", "--spec", PAPER_SPEC, "--n", "5")
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert lines[0] == "x1,x2" and len(lines) == 6

    def test_invalid_kind_exits_2(self):
        assert run_cli("sample", "--spec", '{"kind":"bogus"}', "--n", "5").returncode == 2

    def test_out_file_matches_stdout(self, tmp_path):
        path = tmp_path / "s.csv"
        to_file = run_cli("sample", "--spec", PAPER_SPEC, "--n", "20", "--out", str(path))
        to_stdout = run_cli("sample", "--spec", PAPER_SPEC, "--n", "20")
        assert to_file.returncode == 0
        assert path.read_text() == to_stdout.stdout


class TestUsage:
    def test_no_subcommand_exits_2(self):
        assert run_cli().returncode == 2

    def test_unknown_flag_exits_2(self):
        assert run_cli("ratio", "--covariance", "[[1]]").returncode == 2
