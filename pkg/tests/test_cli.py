import json

import numpy as np
import pytest

from pretestci.cli import (
    EXIT_DIMENSION,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_RANK,
    EXIT_USAGE,
    CurveRecord,
    RunManifest,
    emit_outputs,
    ingest_problem,
    parse_grid,
    run_subcommand,
)
from pretestci.errors import CsvParseError, DimensionMismatchError
from pretestci.mc import CoverageEstimate, IntervalKind, McMethod


def write_design(path, n=20, p=4, seed=0):
    rng = np.random.default_rng(seed)
    x = np.column_stack([np.ones(n), rng.standard_normal((n, p - 1))])
    np.savetxt(path, x, delimiter=",")
    return x


@pytest.fixture()
def design_csv(tmp_path):
    path = tmp_path / "design.csv"
    write_design(path)
    return path


class TestIngest:
    def test_reads_dimensions(self, design_csv):
        prob = ingest_problem(str(design_csv), "0,0,1,0", 0.05)
        assert (prob.n, prob.p) == (20, 4)
        assert prob.a[2] == 1.0

    def test_header_row_skipped(self, tmp_path):
        path = tmp_path / "with_header.csv"
        x = write_design(tmp_path / "raw.csv", n=10, p=2)
        with open(path, "w") as fh:
            fh.write("intercept,slope\n")
            for row in x:
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
        prob = ingest_problem(str(path), "1,0", 0.05, header=True)
        assert (prob.n, prob.p) == (10, 2)

    def test_wrong_contrast_length(self, design_csv):
        with pytest.raises(DimensionMismatchError):
            ingest_problem(str(design_csv), "0,0,1", 0.05)

    def test_non_numeric_cell_reports_position(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0,2.0\n1.0,oops\n1.0,3.0\n")
        with pytest.raises(CsvParseError) as err:
            ingest_problem(str(path), "1,0", 0.05)
        assert err.value.row == 2 and err.value.col == 2
        assert "row 2" in str(err.value) and "column 2" in str(err.value)

    def test_contrast_from_file(self, design_csv, tmp_path):
        a_path = tmp_path / "contrast.csv"
        a_path.write_text("0\n0\n1\n0\n")
        prob = ingest_problem(str(design_csv), str(a_path), 0.05)
        assert prob.a[2] == 1.0

    def test_round_trip_values(self, tmp_path):
        x = write_design(tmp_path / "d.csv", n=12, p=3, seed=5)
        prob = ingest_problem(str(tmp_path / "d.csv"), "0,1,0", 0.05)
        np.testing.assert_allclose(prob.x, x, rtol=1e-15)


class TestParseGrid:
    def test_default_protocol_grid(self):
        grid = parse_grid("0:0.98:0.07")
        assert len(grid) == 15
        assert grid[0] == 0.0 and grid[-1] == 0.98
        assert grid[3] == 0.21

    def test_singleton(self):
        assert parse_grid("0.5:0.5:1") == (0.5,)

    def test_rejects_non_dividing_step(self):
        from pretestci.errors import DomainError

        with pytest.raises(DomainError):
            parse_grid("0:1:0.3")


class TestEmit:
    def _manifest(self):
        return RunManifest(
            command="compare",
            x_path="design.csv",
            a_spec="0,0,1,0",
            n=20,
            p=4,
            alpha=0.05,
            alpha_tilde=0.05,
            estimator="reml",
            pretest_family="durbin-watson",
            grid_spec="0:0.98:0.07",
            grid=[0.0, 0.07],
            runs=100,
            seed=42,
            method="control-variate",
            version="0.1.0",
            created_utc="2026-01-01T00:00:00+00:00",
        )

    def test_single_record_csv(self, tmp_path):
        rec = CurveRecord.from_estimate(
            CoverageEstimate(
                psi=0.0,
                interval_kind=IntervalKind.FGLS,
                estimate=0.95,
                stderr=0.001,
                runs=100,
                seed=42,
                wall_time=0.1,
                method=McMethod.CONTROL_VARIATE,
            )
        )
        assert rec.ci_low == pytest.approx(0.94804)
        assert rec.ci_high == pytest.approx(0.95196)
        files = emit_outputs([rec], self._manifest(), tmp_path / "out")
        csv_text = (tmp_path / "out" / "curves.csv").read_text()
        lines = csv_text.splitlines()
        assert lines[0] == "psi,interval_kind,estimate,stderr,ci_low,ci_high,M,seed"
        assert len(lines) == 2
        assert any(f.name == "plot.gp" for f in files)
        manifest = json.loads((tmp_path / "out" / "manifest.json").read_text())
        assert manifest["runs"] == 100 and manifest["seed"] == 42

    def test_deterministic_bytes(self, tmp_path):
        rec = CurveRecord(
            psi=0.07,
            interval_kind="fgls",
            estimate=0.9493229,
            stderr=0.0012345,
            ci_low=0.94690,
            ci_high=0.95174,
            runs=100,
            seed=42,
        )
        emit_outputs([rec], self._manifest(), tmp_path / "a")
        emit_outputs([rec], self._manifest(), tmp_path / "b")
        assert (tmp_path / "a" / "curves.csv").read_bytes() == (
            tmp_path / "b" / "curves.csv"
        ).read_bytes()


class TestSubcommands:
    def test_usage_error_is_64(self, capsys):
        assert run_subcommand(["no-such-command"]) == EXIT_USAGE
        assert run_subcommand(["compare", "--bogus-flag"]) == EXIT_USAGE

    def test_wrong_contrast_exit_code(self, design_csv, capsys):
        code = run_subcommand(
            ["critical-value", "--x", str(design_csv) + ".missing"]
        )
        assert code == 3
        code = run_subcommand(
            [
                "interval",
                "--x",
                str(design_csv),
                "--a",
                "0,0,1",
                "--y",
                str(design_csv),
                "--kind",
                "ols",
            ]
        )
        assert code == EXIT_DIMENSION

    def test_duplicated_column_rank_error(self, tmp_path, capsys):
        path = tmp_path / "dup.csv"
        col = np.linspace(0, 1, 10)
        np.savetxt(path, np.column_stack([col, col]), delimiter=",")
        code = run_subcommand(["critical-value", "--x", str(path)])
        assert code == EXIT_RANK

    def test_non_numeric_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\nx,3\n4,5\n")
        code = run_subcommand(["critical-value", "--x", str(path)])
        assert code == EXIT_PARSE

    def test_critical_value_json(self, design_csv, tmp_path, capsys):
        out = tmp_path / "cv.json"
        code = run_subcommand(
            [
                "critical-value",
                "--x",
                str(design_csv),
                "--alpha-tilde",
                "0.05",
                "--out",
                str(out),
            ]
        )
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert set(payload) == {"n", "p", "alpha_tilde", "critical_value", "spectrum"}
        assert payload["n"] == 20 and payload["p"] == 4
        assert len(payload["spectrum"]) == 16
        assert 0.0 < payload["critical_value"] < 4.0

    def test_interval_two_stage(self, design_csv, tmp_path, capsys):
        rng = np.random.default_rng(3)
        y_path = tmp_path / "y.csv"
        np.savetxt(y_path, rng.standard_normal(20), delimiter=",")
        out = tmp_path / "interval.json"
        code = run_subcommand(
            [
                "interval",
                "--x",
                str(design_csv),
                "--a",
                "0,0,1,0",
                "--y",
                str(y_path),
                "--kind",
                "two-stage",
                "--out",
                str(out),
            ]
        )
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["lower"] <= payload["center"] <= payload["upper"]
        assert payload["pretest"]["family"] == "durbin-watson"
        assert isinstance(payload["pretest"]["rejected_null"], bool)

    def test_interval_fixed_requires_psi(self, design_csv, tmp_path, capsys):
        y_path = tmp_path / "y.csv"
        np.savetxt(y_path, np.arange(20.0), delimiter=",")
        code = run_subcommand(
            [
                "interval",
                "--x",
                str(design_csv),
                "--a",
                "0,0,1,0",
                "--y",
                str(y_path),
                "--kind",
                "fixed",
            ]
        )
        assert code == EXIT_DIMENSION

    def test_compare_emits_curves(self, design_csv, tmp_path, capsys):
        out_dir = tmp_path / "cmp"
        argv = [
            "compare",
            "--x",
            str(design_csv),
            "--a",
            "0,0,1,0",
            "--alpha",
            "0.05",
            "--alpha-tilde",
            "0.05",
            "--grid",
            "0:0.14:0.07",
            "--runs",
            "400",
            "--seed",
            "42",
            "--out",
            str(out_dir),
        ]
        assert run_subcommand(argv) == EXIT_OK
        lines = (out_dir / "curves.csv").read_text().splitlines()
        assert len(lines) == 1 + 2 * 3  # header + two kinds x three grid points
        kinds = {line.split(",")[1] for line in lines[1:]}
        assert kinds == {"fgls", "two-stage"}
        # byte-identical re-run
        out2 = tmp_path / "cmp2"
        argv[-1] = str(out2)
        assert run_subcommand(argv) == EXIT_OK
        assert (out_dir / "curves.csv").read_bytes() == (out2 / "curves.csv").read_bytes()
        manifest = json.loads((out_dir / "manifest.json").read_text())
        assert manifest["grid"] == [0.0, 0.07, 0.14]

    def test_coverage_curve_known_psi(self, design_csv, tmp_path, capsys):
        out_dir = tmp_path / "curve"
        code = run_subcommand(
            [
                "coverage-curve",
                "--x",
                str(design_csv),
                "--a",
                "0,0,1,0",
                "--kind",
                "known-psi",
                "--grid",
                "0:0.5:0.5",
                "--runs",
                "2000",
                "--seed",
                "7",
                "--out",
                str(out_dir),
            ]
        )
        assert code == EXIT_OK
        lines = (out_dir / "curves.csv").read_text().splitlines()
        assert len(lines) == 3

    def test_efficiency_report(self, design_csv, tmp_path, capsys):
        out = tmp_path / "eff.json"
        code = run_subcommand(
            [
                "efficiency",
                "--x",
                str(design_csv),
                "--a",
                "0,0,1,0",
                "--psi",
                "0.49",
                "--runs",
                "2000",
                "--seed",
                "11",
                "--out",
                str(out),
            ]
        )
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["brute_force"]["stderr"] > 0
        assert payload["control_variate"]["stderr"] > 0
        assert payload["variance_ratio"] > 0

    def test_self_check_passes(self, capsys):
        code = run_subcommand(["self-check", "--runs", "400", "--psi", "0.4"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "FAIL" not in out
        assert "all checks passed" in out
