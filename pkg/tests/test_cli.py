import json

import pytest

from qcdistortion.cli import build_parser, config_from_args, main
from qcdistortion.config import PROFILE_ENV
from qcdistortion.export import SWEEP_HEADER
from qcdistortion.models import Command, OutputFormat


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestAnalyze:
    def test_sing_2_4(self, capsys):
        code, out, _ = _run(capsys, "analyze", "--sing", "2", "4")
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "improved"
        assert report["h"] == pytest.approx(4.0)
        assert report["d2"] == pytest.approx(-1.0 / 45.0, rel=1e-9)
        assert report["t_plus"] == pytest.approx(1.19219, abs=1e-5)
        assert report["t_minus"] == pytest.approx(-2.04584, abs=1e-5)
        assert 1.0 < report["ratio"] <= 2.0**0.5
        assert report["energy_gap"] > 0

    def test_inline_matrix_with_scale(self, capsys):
        code, out, _ = _run(capsys, "analyze", "2", "0", "0", "0", "4", "0", "0", "0", "8")
        assert code == 0
        report = json.loads(out)
        assert report["h"] == pytest.approx(4.0)
        assert report["t_plus"] == pytest.approx(2.0 * 1.19219, abs=1e-4)

    def test_conformal_matrix(self, capsys):
        code, out, _ = _run(capsys, "analyze", "1", "0", "0", "0", "1", "0", "0", "0", "1")
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "no_improvement"
        assert report["reason"] == "conformal, no improvement"

    def test_repeated_singular_value(self, capsys):
        code, out, _ = _run(capsys, "analyze", "--sing", "2", "2")
        assert code == 0
        assert json.loads(out)["status"] == "no_improvement"

    def test_large_beta(self, capsys):
        code, out, _ = _run(capsys, "analyze", "--sing", "2", "1e6")
        assert code == 0
        assert json.loads(out)["t_plus"] == pytest.approx(2.0, rel=1e-3)

    def test_matrix_file_and_output(self, capsys, tmp_path):
        matrix = tmp_path / "A.json"
        matrix.write_text(json.dumps({"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 4]]}))
        target = tmp_path / "report.json"
        code, out, _ = _run(capsys, "--output", str(target), "analyze", "--matrix-file", str(matrix))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["h"] == pytest.approx(4.0)

    def test_power_energy(self, capsys):
        code, out, _ = _run(capsys, "analyze", "--sing", "2", "4", "--energy", "power", "--energy-p", "2")
        assert code == 0
        assert json.loads(out)["energy"] == {"family": "power", "p": 2.0}


class TestExitCodes:
    def test_missing_matrix(self, capsys):
        code, _, err = _run(capsys, "analyze")
        assert code == 2
        assert "exactly one matrix input" in err

    def test_bad_sing(self, capsys):
        assert _run(capsys, "analyze", "--sing", "5", "4")[0] == 2

    def test_inline_and_file(self, capsys, tmp_path):
        matrix = tmp_path / "A.json"
        matrix.write_text("[1, 0, 0, 0, 2, 0, 0, 0, 4]")
        code = _run(capsys, "analyze", "1", "0", "0", "0", "2", "0", "0", "0", "4", "--matrix-file", str(matrix))[0]
        assert code == 2

    def test_no_command(self, capsys):
        assert _run(capsys)[0] == 2

    def test_singular_matrix(self, capsys):
        code, _, err = _run(capsys, "analyze", "1", "0", "0", "0", "1", "0", "0", "0", "0")
        assert code == 3
        assert "singular" in err

    def test_unwritable_output(self, capsys, tmp_path):
        target = tmp_path / "missing" / "sweep.csv"
        code = _run(capsys, "sweep", "--alphas", "2", "--betas", "4", "--format", "csv", "--output", str(target))[0]
        assert code == 4

    def test_unknown_profile(self, capsys):
        assert _run(capsys, "analyze", "--sing", "2", "4", "--profile", "sloppy")[0] == 2

    def test_unknown_profile_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(PROFILE_ENV, "sloppy")
        code, out, err = _run(capsys, "analyze", "--sing", "2", "4")
        assert code == 2 and out == ""
        assert PROFILE_ENV in err

    def test_profile_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(PROFILE_ENV, "loose")
        code, _, err = _run(capsys, "analyze", "--sing", "2", "4", "-v")
        assert code == 0
        assert "with profile 'loose'" in err

    def test_flag_overrides_environment(self, capsys, monkeypatch):
        monkeypatch.setenv(PROFILE_ENV, "sloppy")
        assert _run(capsys, "analyze", "--sing", "2", "4", "--profile", "strict")[0] == 0


class TestSweep:
    def test_csv_to_stdout(self, capsys):
        code, out, err = _run(capsys, "sweep", "--alphas", "2", "3", "--betas", "4", "10", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == ",".join(SWEEP_HEADER)
        assert len(lines) == 5
        assert json.loads(err[err.index("{"):])["cells"] == 4

    def test_json(self, capsys):
        code, out, _ = _run(capsys, "sweep", "--alphas", "2", "--betas", "4", "10")
        assert code == 0
        data = json.loads(out)
        assert data["summary"]["within_bound"]
        assert [row["beta"] for row in data["rows"]] == [4.0, 10.0]

    def test_reruns_are_byte_identical(self, capsys, tmp_path):
        grid = ["--alphas", "1.5", "2.5", "4", "--betas", "5", "11", "20", "--format", "csv"]
        first, second = tmp_path / "one.csv", tmp_path / "three.csv"
        assert _run(capsys, "sweep", *grid, "--workers", "1", "--output", str(first))[0] == 0
        assert _run(capsys, "sweep", *grid, "--workers", "3", "--output", str(second))[0] == 0
        assert first.read_bytes() == second.read_bytes()


class TestLaminate:
    def test_report(self, capsys):
        code, out, _ = _run(capsys, "laminate", "--sing", "2", "4", "--j", "20", "--samples", "2000")
        assert code == 0
        report = json.loads(out)
        assert report["max_deviation"] <= report["deviation_bound"]
        assert report["h_fj"] == pytest.approx(report["jump"]["h_laminate"])
        assert report["hadamard"]["rank_one"]

    def test_geometry_csv(self, capsys):
        code, out, _ = _run(capsys, "laminate", "--sing", "2", "4", "--samples", "5", "--geometry")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "x1,x2,x3,f1,f2,f3,phase"
        assert len(lines) == 6


class TestVerify:
    def test_selected_check_passes(self, capsys):
        code, out, err = _run(capsys, "verify", "--only", "distortion")
        assert code == 0
        assert json.loads(out)["passed"]
        assert "distortion" in err

    def test_injected_fault_fails(self, capsys):
        code, out, _ = _run(capsys, "verify", "--inject-fault", "--only", "crossings", "--alphas", "2", "--betas", "4")
        assert code == 1
        assert json.loads(out)["failures"] == ["crossings"]

    def test_empty_grid(self, capsys):
        assert _run(capsys, "verify", "--alphas")[0] == 2

    def test_unknown_check(self, capsys):
        assert _run(capsys, "verify", "--only", "everything")[0] == 2

    def test_json_lines_progress(self, capsys):
        code, _, err = _run(capsys, "verify", "--only", "distortion", "--progress", "jsonl")
        assert code == 0
        events = [json.loads(line) for line in err.splitlines() if line.startswith("{")]
        assert [event["type"] for event in events] == ["stage", "check", "summary"]


def test_figures(capsys, tmp_path):
    out_dir = tmp_path / "figures"
    code, out, _ = _run(capsys, "figures", "--output", str(out_dir))
    assert code == 0
    names = {path.name for path in out_dir.iterdir()}
    assert names == {
        "branches_sing_1_2_10.csv",
        "q_landscape_sing_1_2_4.csv",
        "jump_strong.csv",
        "jump_weak.csv",
        "diagonal_examples.json",
    }
    assert json.loads(out)["output_dir"] == str(out_dir)


class TestArguments:
    def test_common_options_after_subcommand(self):
        args = build_parser().parse_args(["sweep", "--alphas", "2", "--betas", "4", "--format", "csv", "--workers", "2"])
        config = config_from_args(args)
        assert config.command is Command.SWEEP
        assert config.output_format is OutputFormat.CSV
        assert config.workers == 2

    def test_run_file(self, tmp_path):
        run = tmp_path / "run.yaml"
        run.write_text("command: laminate\nsing:\n  - 2\n  - 4\nj: 5\n")
        config = config_from_args(build_parser().parse_args(["--config", str(run), "--profile", "loose"]))
        assert config.command is Command.LAMINATE
        assert config.j == 5
        assert config.tolerance_profile == "loose"
