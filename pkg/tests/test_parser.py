import json

import numpy as np
import pytest

from qcdistortion.errors import ParseError
from qcdistortion.models import Command, EnergyFamily, OutputFormat
from qcdistortion.parser import load_matrix_file, load_run_file, parse_matrix_values, parse_run_text

DIAG_124 = [[1.0, 0.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 4.0]]


class TestMatrixInput:
    def test_row_major_values(self):
        np.testing.assert_array_equal(parse_matrix_values(["1", 0, 0, 0, 2, 0, 0, 0, "4"]), np.array(DIAG_124))

    @pytest.mark.parametrize("values", [[1.0] * 8, [1.0] * 8 + ["x"], [1.0] * 8 + [float("inf")]])
    def test_bad_values(self, values):
        with pytest.raises(ParseError):
            parse_matrix_values(values)

    @pytest.mark.parametrize(
        "payload",
        [DIAG_124, {"matrix": DIAG_124}, [v for row in DIAG_124 for v in row], {"matrix": [1, 0, 0, 0, 2, 0, 0, 0, 4]}],
    )
    def test_json_layouts(self, tmp_path, payload):
        path = tmp_path / "A.json"
        path.write_text(json.dumps(payload))
        np.testing.assert_array_equal(load_matrix_file(path), np.array(DIAG_124))

    @pytest.mark.parametrize("text", ["{not json", '{"other": 1}', "[[1, 2], [3, 4], [5, 6]]", '"abc"'])
    def test_malformed_files(self, tmp_path, text):
        path = tmp_path / "A.json"
        path.write_text(text)
        with pytest.raises(ParseError):
            load_matrix_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="Cannot read"):
            load_matrix_file(tmp_path / "nope.json")


class TestRunFile:
    def test_block_style(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(
            "command: sweep\n"
            "alphas:\n  - 2\n  - 3\n"
            "betas:\n  - 10\n"
            "format: csv\n"
            "workers: 2\n"
            "tolerance_profile: strict\n"
        )
        config = load_run_file(path)
        assert config.command is Command.SWEEP
        assert config.alphas == [2.0, 3.0]
        assert config.betas == [10.0]
        assert config.output_format is OutputFormat.CSV
        assert config.workers == 2
        assert config.tolerance_profile == "strict"

    def test_energy_and_checks(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text(
            "command: analyze\n"
            "sing:\n  - 2\n  - 4\n"
            "energy:\n  family: power\n  p: 2\n"
            "checks:\n  - distortion\n"
        )
        config = load_run_file(path)
        assert config.sing == (2.0, 4.0)
        assert config.energy.family is EnergyFamily.POWER
        assert config.energy.p == 2.0
        assert config.checks == ["distortion"]

    def test_flow_style_is_rejected(self):
        with pytest.raises(ParseError):
            parse_run_text("command: sweep\nalphas: [2, 3]\n")

    @pytest.mark.parametrize(
        "text",
        ["command: explode\n", "command: sweep\nunknown: 1\n", "alphas:\n  - 2\n", "command: sweep\nworkers: many\n"],
    )
    def test_schema_errors(self, text):
        with pytest.raises(ParseError):
            parse_run_text(text)

    def test_sing_needs_two_values(self, tmp_path):
        path = tmp_path / "run.yaml"
        path.write_text("command: analyze\nsing:\n  - 2\n")
        with pytest.raises(ParseError, match="two values"):
            load_run_file(path)
