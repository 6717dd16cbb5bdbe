import json
import xml.etree.ElementTree as ET

import pytest

from moyalex import __version__
from moyalex.cli import EXIT_ERROR, EXIT_OK, EXIT_VERDICT, main
from moyalex.config import DATA_DIR

THETA_51 = str(DATA_DIR / "theta_51.json")
THETA_TRIVIAL = str(DATA_DIR / "theta_trivial.json")
ONES = ["--color", "i=1", "--color", "j=1"]


def fields(out: str) -> dict[str, str]:
    rows = [line.split("\t", 1) for line in out.splitlines() if "\t" in line]
    return {key: value for key, value in rows}


def test_compute(capsys):
    assert main(["compute", THETA_51, *ONES]) == EXIT_OK
    out = fields(capsys.readouterr().out)
    assert out["t-form"] == "t^(7/2) - t^(5/2) - t^(3/2) + 3*t^(1/2) + t^(-1/2) - t^(-3/2)"
    assert out["engine"] == "statesum"
    assert "delta" in out


def test_compute_with_rewrite_trace(capsys):
    assert main(["compute", THETA_TRIVIAL, *ONES, "--engine", "rewrite", "--trace"]) == EXIT_OK
    out = capsys.readouterr().out
    assert fields(out)["t-form"] == "t^(1/2) + t^(-1/2)"
    assert "engine\trewrite" in out


def test_rewrite_with_color_reduction(capsys):
    colors = ["--color", "i=1", "--color", "j=2"]
    assert main(["compute", THETA_TRIVIAL, *colors]) == EXIT_OK
    expected = fields(capsys.readouterr().out)["t-form"]
    assert main(["compute", THETA_TRIVIAL, *colors, "--engine", "rewrite", "--trace", "--reduce-colors"]) == EXIT_OK
    out = capsys.readouterr().out
    assert fields(out)["t-form"] == expected
    assert "\tcolor\t" in out


def test_planarity_verdicts(capsys):
    assert main(["planarity", THETA_51, *ONES]) == EXIT_VERDICT
    out = fields(capsys.readouterr().out)
    assert out["verdict"] == "NonPlanarCertificate"
    assert out["witness"] == "-t^(-3/2)"
    assert out["value_at_one"] == "2"

    assert main(["planarity", THETA_TRIVIAL, *ONES]) == EXIT_OK
    assert fields(capsys.readouterr().out)["verdict"] == "Inconclusive"


def test_eval1(capsys):
    assert main(["eval1", THETA_51, *ONES]) == EXIT_OK
    assert capsys.readouterr().out == "2\n"


def test_states(capsys):
    assert main(["states", THETA_51, *ONES]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "states\t7"
    assert len(lines) == 8


def test_symbolic_states(capsys):
    assert main(["states", THETA_51, "--symbolic"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 7
    assert all("[i + j]" in line for line in lines)


def test_bracket_engines_agree(capsys):
    assert main(["bracket", THETA_51, *ONES]) == EXIT_OK
    by_states = fields(capsys.readouterr().out)
    assert main(["bracket", THETA_51, *ONES, "--engine", "det"]) == EXIT_OK
    by_det = fields(capsys.readouterr().out)
    assert by_states == by_det


def test_convert_pd(capsys):
    assert main(["convert", THETA_51, *ONES, "--format", "pd"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("edge\ta0\t1\t")
    assert lines[-1].startswith("delta\t")


def test_convert_json_binds_colors(capsys):
    assert main(["convert", THETA_TRIVIAL, "--color", "i=2", "--color", "j=3", "--canonical"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert sorted(e["color"] for e in doc["edges"]) == [2, 3, 5]


def test_several_files(capsys):
    assert main(["eval1", THETA_51, THETA_TRIVIAL, *ONES]) == EXIT_OK
    out = capsys.readouterr().out
    assert out == f"== {THETA_51}\n2\n== {THETA_TRIVIAL}\n2\n"


def test_several_files_in_parallel(capsys):
    assert main(["--jobs", "2", "eval1", THETA_51, THETA_TRIVIAL, *ONES]) == EXIT_OK
    assert capsys.readouterr().out == f"== {THETA_51}\n2\n== {THETA_TRIVIAL}\n2\n"


def test_errors_exit_2(capsys, tmp_path):
    missing = str(tmp_path / "missing.json")
    assert main(["eval1", missing]) == EXIT_ERROR
    assert "ParseError" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["compute", str(bad)]) == EXIT_ERROR
    assert str(bad) in capsys.readouterr().err

    assert main(["compute", THETA_51]) == EXIT_ERROR
    assert "UnboundColor" in capsys.readouterr().err


@pytest.mark.parametrize("error", [ValueError("bad value"), RuntimeError("stuck")])
def test_unexpected_errors_exit_2(capsys, monkeypatch, error):
    def fail(*args, **kwargs):
        raise error

    monkeypatch.setattr("moyalex.cli.eval_at_one", fail)
    assert main(["eval1", THETA_51, THETA_TRIVIAL, *ONES]) == EXIT_ERROR
    err = capsys.readouterr().err
    assert f"{THETA_51}: {type(error).__name__}: {error}" in err
    assert THETA_TRIVIAL in err


def test_good_and_bad_files(capsys, tmp_path):
    missing = str(tmp_path / "missing.json")
    assert main(["eval1", THETA_51, missing, *ONES]) == EXIT_ERROR
    captured = capsys.readouterr()
    assert captured.out == f"== {THETA_51}\n2\n"
    assert missing in captured.err


@pytest.mark.parametrize("color", ["i", "=1", "i=one"])
def test_bad_color_binding(color):
    with pytest.raises(SystemExit) as info:
        main(["eval1", THETA_51, "--color", color])
    assert info.value.code == 2


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_verify_writes_reports(capsys, tmp_path):
    report, junit = tmp_path / "report.json", tmp_path / "report.xml"
    assert main(["verify", "--suite", "relations", "--report", str(report), "--junit", str(junit)]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("0 failed")
    data = json.loads(report.read_text())
    assert data["passed"] is True
    assert data["suite"] == "relations"
    assert ET.parse(junit).getroot().tag == "testsuites"
