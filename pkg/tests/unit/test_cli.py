"""
Unit tests for the command-line entry point.

Each test calls ``main`` with an argument list and checks the exit code and
what landed on stdout or in the output file.
"""

import csv
import io
import json

import pytest
from openpyxl import load_workbook

from entrokit.main import main
from entrokit.services.sequence_io import read_sequence


# ===========================================================================
# Helpers
# ===========================================================================


def _write_json(path, payload) -> str:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def _read_csv(text: str) -> list[list[str]]:
    return list(csv.reader(io.StringIO(text)))


def _make_data_file(tmp_path, spec=None, n: int = 3000, name: str = "x") -> str:
    spec_path = _write_json(tmp_path / f"{name}.json", spec or {"kind": "iid", "p": 0.25})
    out = tmp_path / f"{name}.txt"
    assert main(["generate", "--spec", spec_path, "--n", str(n), "--seed", "4", "--out", str(out)]) == 0
    return str(out)


def _make_plan_file(tmp_path) -> str:
    return _write_json(tmp_path / "plan.json", {
        "model": "iid",
        "spec": {"kind": "iid", "p": 0.25},
        "estimators": [
            {"method": "hhat-nk", "n": 512, "k": 128},
            {"method": "htilde-nk", "n": 512, "k": 128},
        ],
        "repetitions": 3,
        "data_length": 1200,
        "seed": 2,
    })


# ===========================================================================
# TestGenerateCommand
# ===========================================================================


class TestGenerateCommand:
    """entrokit generate."""

    def test_writes_sequence_file(self, tmp_path):
        """The file holds n symbols from the spec."""
        path = _make_data_file(tmp_path, n=500)
        assert read_sequence(path).length == 500

    def test_same_seed_same_file(self, tmp_path):
        """Two runs with one seed write identical files."""
        first = _make_data_file(tmp_path, name="first")
        second = _make_data_file(tmp_path, name="second")
        assert (tmp_path / "first.txt").read_bytes() == (tmp_path / "second.txt").read_bytes()
        assert first != second

    def test_missing_spec_file(self, tmp_path, capsys):
        """A missing spec exits with code 2."""
        assert main(["generate", "--spec", str(tmp_path / "nope.json"), "--n", "10"]) == 2
        assert "not found" in capsys.readouterr().err

    def test_invalid_spec(self, tmp_path):
        """A spec failing validation exits with code 2."""
        spec = _write_json(tmp_path / "bad.json", {"kind": "iid", "p": 1.5})
        assert main(["generate", "--spec", spec, "--n", "10"]) == 2

    def test_malformed_json(self, tmp_path):
        """Text that is not JSON exits with code 2."""
        path = tmp_path / "broken.json"
        path.write_text("{kind: iid", encoding="utf-8")
        assert main(["generate", "--spec", str(path), "--n", "10"]) == 2


# ===========================================================================
# TestEstimateCommand
# ===========================================================================


class TestEstimateCommand:
    """entrokit estimate."""

    @pytest.mark.parametrize("args", [
        ["--method", "plugin", "--w", "4"],
        ["--method", "hhat-nk", "--n", "1024", "--k", "512"],
        ["--method", "htilde-n"],
        ["--method", "ctw", "--depth", "inf"],
        ["--method", "ctw", "--depth", "6"],
        ["--method", "renewal"],
    ])
    def test_prints_one_csv_row(self, tmp_path, capsys, args):
        """Every method prints method and estimate."""
        data = _make_data_file(tmp_path)
        capsys.readouterr()
        assert main(["estimate", "--in", data, *args]) == 0
        header, row = _read_csv(capsys.readouterr().out)
        assert header == ["method", "estimate"]
        assert row[0] == args[1]
        assert 0.0 < float(row[1]) < 1.5

    def test_data_too_short(self, tmp_path):
        """n + k beyond the data exits with code 2."""
        data = _make_data_file(tmp_path, n=200)
        assert main(["estimate", "--in", data, "--method", "hhat-nk", "--n", "150", "--k", "100"]) == 2

    def test_missing_parameters(self, tmp_path):
        """A fixed-window method without k exits with code 2."""
        data = _make_data_file(tmp_path)
        assert main(["estimate", "--in", data, "--method", "htilde-nk", "--n", "100"]) == 2

    def test_renewal_without_events(self, tmp_path):
        """Renewal estimation on all-zero data exits with code 3."""
        data = _make_data_file(tmp_path, spec={"kind": "iid", "p": 0.0}, n=300)
        assert main(["estimate", "--in", data, "--method", "renewal"]) == 3


# ===========================================================================
# TestBootstrapAndHmmCommands
# ===========================================================================


class TestBootstrapAndHmmCommands:
    """entrokit bootstrap and entrokit hmm-entropy."""

    def test_bootstrap(self, tmp_path, capsys):
        """The bootstrap row carries the estimate, sigma-hat, p and B."""
        data = _make_data_file(tmp_path)
        capsys.readouterr()
        code = main([
            "bootstrap", "--in", data, "--method", "htilde-nk",
            "--n", "1024", "--k", "512", "--B", "60", "--seed", "1",
        ])
        assert code == 0
        header, row = _read_csv(capsys.readouterr().out)
        assert header == ["method", "n", "k", "estimate", "stderr", "p", "B"]
        assert row[0] == "htilde-nk"
        assert float(row[4]) > 0
        assert row[6] == "60"

    def test_hmm_entropy(self, tmp_path, capsys):
        """Estimate, stderr and one row per realization."""
        spec = _write_json(tmp_path / "hmm.json", {
            "kind": "hmm", "transitions": [[0.9, 0.1], [0.3, 0.7]], "rates": [0.1, 0.5],
        })
        assert main(["hmm-entropy", "--spec", spec, "--n", "2000", "--reps", "3", "--seed", "3"]) == 0
        rows = _read_csv(capsys.readouterr().out)
        assert rows[0] == ["statistic", "value"]
        assert [r[0] for r in rows[1:]] == ["estimate", "stderr", "rep0", "rep1", "rep2"]

    def test_hmm_entropy_rejects_other_kinds(self, tmp_path):
        """A non-HMM spec exits with code 2."""
        spec = _write_json(tmp_path / "iid.json", {"kind": "iid", "p": 0.3})
        assert main(["hmm-entropy", "--spec", spec, "--n", "100"]) == 2


# ===========================================================================
# TestExperimentCommands
# ===========================================================================


class TestExperimentCommands:
    """entrokit experiment and entrokit bias-curve."""

    def test_experiment_csv(self, tmp_path, capsys):
        """One CSV row per estimator."""
        assert main(["experiment", "--plan", _make_plan_file(tmp_path), "--threads", "2"]) == 0
        rows = _read_csv(capsys.readouterr().out)
        assert rows[0][:3] == ["model", "estimator", "n"]
        assert [r[1] for r in rows[1:]] == ["hhat-nk(n=512,k=128)", "htilde-nk(n=512,k=128)"]

    def test_experiment_xlsx(self, tmp_path):
        """xlsx output is a workbook with a results sheet."""
        out = tmp_path / "out" / "results.xlsx"
        assert main(["experiment", "--plan", _make_plan_file(tmp_path), "--format", "xlsx", "--out", str(out)]) == 0
        assert "results" in load_workbook(out).sheetnames

    def test_xlsx_needs_out(self, tmp_path):
        """xlsx to stdout is refused with code 2."""
        assert main(["experiment", "--plan", _make_plan_file(tmp_path), "--format", "xlsx"]) == 2

    def test_bias_curve(self, tmp_path, capsys):
        """A k-grid curve prints one row per grid value and estimator, plus a fit."""
        code = main([
            "bias-curve", "--plan", _make_plan_file(tmp_path),
            "--axis", "inv-sqrt-k", "--grid", "32,64,128",
        ])
        assert code == 0
        captured = capsys.readouterr()
        rows = _read_csv(captured.out)
        assert len(rows) == 1 + 3 * 2
        assert {r[3] for r in rows[1:]} == {"hhat-nk(n=512,k=128)", "htilde-nk(n=512,k=128)"}
        assert captured.err.count("R^2") == 2

    def test_no_command_prints_help(self, capsys):
        """Without a subcommand the help is printed and the exit code is 2."""
        assert main([]) == 2
        assert "usage" in capsys.readouterr().out
