"""
Command-Line Test Suite

Test Coverage:
- Every command end to end on the bundled models
- Exit codes: 0 success, 1 refuted, 2 usage/parse error, 3 budget exceeded,
  4 other library errors
- CSV and JSON reports, metadata, decimals and output files
- Logging configuration from YAML
- Configured default grid shape; identical star reports across thread counts

Usage:
    pytest tests/test_cli.py -v
"""

import importlib
import io
import json
import logging
from fractions import Fraction

import pandas as pd
import pytest

from tropdeg.cli import Report, main as cli_main
main_module = importlib.import_module("tropdeg.cli.main")
from tropdeg.cli.report import build_metadata, decimal_string, render_value
from tropdeg.settings import reset_settings_cache

from conftest import MODELS_DIR

REAL_CONFIGURE_LOGGING = main_module.configure_logging


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    monkeypatch.setattr(main_module, "configure_logging", lambda verbose=False: None)


def run_cli(capsys, *argv):
    code = cli_main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_body(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return pd.read_csv(io.StringIO("\n".join(lines)), dtype=str, keep_default_na=False)


def model(name):
    return str(MODELS_DIR / name)


def test_classes_on_the_anti_diagonal(capsys):
    code, out, _ = run_cli(capsys, "classes", "--model", model("anti_diagonal_segment.json"), "--k-max", "3")
    assert code == 0
    assert out.startswith("# command: classes\n")
    assert "# model_sha256: " in out
    frame = csv_body(out)
    assert list(frame.columns) == ["k", "shape", "classes", "piece_sum"]
    assert list(frame["classes"]) == ["3", "5", "7"]


def test_hilbert_json_report(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--model", model("anti_diagonal_segment.json"), "--format", "json")
    assert code == 0
    document = json.loads(out)
    assert document["metadata"]["command"] == "hilbert"
    assert [row["lower"] for row in document["rows"]] == [3, 5, 7, 9]
    assert all(row["exact"] for row in document["rows"])


def test_hilbert_on_points(capsys):
    code, out, _ = run_cli(capsys, "hilbert", "--model", model("two_points.json"))
    assert code == 0
    frame = csv_body(out)
    assert list(frame["k"]) == ["0", "1", "2", "3"]
    assert list(frame["lower"]) == ["1", "2", "2", "2"]


def test_degree(capsys):
    code, out, _ = run_cli(capsys, "degree", "--model", model("anti_diagonal_segment.json"), "--k-max", "3")
    assert code == 0
    frame = csv_body(out)
    assert frame.loc[0, "lower"] == "2"
    assert frame.loc[0, "upper"] == "2"


def test_star_sweep(capsys):
    code, out, _ = run_cli(capsys, "star", "--model", model("tropical_line_star.json"), "--k-max", "6")
    assert code == 0
    frame = csv_body(out)
    assert list(frame["W"]) == ["7", "9"]
    assert list(frame["kB+1"]) == ["11", "13"]
    assert "# slope_realized: false" in out


def test_verify_valid_certificate(capsys):
    code, out, err = run_cli(
        capsys,
        "verify",
        "--model",
        model("anti_diagonal_segment.json"),
        "--certificate",
        str(MODELS_DIR / "certificates" / "anti_diagonal_three.json"),
    )
    assert code == 0
    assert csv_body(out).loc[0, "verified"] == "true"
    assert "refuted" not in err


def test_verify_tampered_certificate(capsys):
    code, out, err = run_cli(
        capsys,
        "verify",
        "--model",
        model("anti_diagonal_segment.json"),
        "--certificate",
        str(MODELS_DIR / "certificates" / "tampered.json"),
    )
    assert code == 1
    assert "tropdeg: refuted: violation at witness 3" in err
    assert csv_body(out).loc[0, "verified"] == "false"


def test_refine_writes_the_certificate(capsys, tmp_path):
    target = tmp_path / "refined.json"
    code, out, _ = run_cli(
        capsys, "refine", "--model", model("diagonal_segment.json"), "--certificate-out", str(target)
    )
    assert code == 0
    row = csv_body(out).loc[0]
    assert row["refined"] == "3"
    assert row["epsilon"] == "1/16"
    assert len(json.loads(target.read_text())["members"]) == 3


def test_oracle_agrees(capsys):
    code, out, _ = run_cli(
        capsys, "oracle", "--model", model("two_points.json"), "--trials", "5", "--k-max", "1", "--seed", "3"
    )
    assert code == 0
    frame = csv_body(out)
    assert "false" not in list(frame["agree"])


def test_report_to_a_file(capsys, tmp_path):
    target = tmp_path / "report.csv"
    code, out, _ = run_cli(
        capsys, "classes", "--model", model("diagonal_segment.json"), "--k-max", "2", "--output", str(target)
    )
    assert code == 0
    assert out == ""
    assert "# command: classes" in target.read_text()


def test_parse_error_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0.5, 0]]}')
    code, _, err = run_cli(capsys, "classes", "--model", str(bad))
    assert code == 2
    assert err.startswith("tropdeg: parse error:")


def test_missing_model_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "classes", "--model", str(tmp_path / "absent.json"))
    assert code == 2
    assert "cannot read model file" in err


def test_empty_k_range_is_a_usage_error(capsys):
    code, _, err = run_cli(capsys, "classes", "--model", model("two_points.json"), "--k-min", "5", "--k-max", "2")
    assert code == 2
    assert "usage error" in err


def test_star_command_needs_a_star(capsys):
    code, _, err = run_cli(capsys, "star", "--model", model("two_points.json"))
    assert code == 2
    assert "star" in err


def test_budget_exceeded_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("TROPDEG_GRID_MAX", "2")
    reset_settings_cache()
    code, _, err = run_cli(capsys, "classes", "--model", model("anti_diagonal_segment.json"))
    assert code == 3
    assert err.startswith("tropdeg: budget exceeded:")


def test_library_error_exit_code(capsys, tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(
        json.dumps(
            {
                "polyhedra": [
                    {"constraints": [{"normal": [1, 0], "const": 1}, {"normal": [-1, 0], "const": 0}]}
                ]
            }
        )
    )
    code, _, err = run_cli(capsys, "classes", "--model", str(empty))
    assert code == 4
    assert "EmptyPolyhedronError" in err


def test_render_values():
    assert render_value(Fraction(1, 3)) == "1/3"
    assert render_value(Fraction(1, 3), decimals=4) == "0.3333"
    assert render_value(Fraction(4, 2), decimals=4) == "2"
    assert render_value(None) == ""
    assert render_value(True) == "true"
    assert decimal_string(Fraction(-5, 8), 2) == "-0.62"


def test_report_rendering():
    metadata = build_metadata("degree", "abc", {"k_max": 3, "budget": None}, "0.1.0")
    assert metadata["options"] == "budget= k_max=3"
    report = Report("degree", ("k", "value"), ({"k": 1, "value": Fraction(5, 2)},), metadata)
    csv = report.render("csv")
    assert csv.splitlines()[:2] == ["# command: degree", "# model_sha256: abc"]
    assert csv.endswith("k,value\n1,5/2\n")
    document = json.loads(report.render("json", decimals=1))
    assert document["rows"] == [{"k": 1, "value": "2.5"}]
    with pytest.raises(ValueError):
        report.render("xml")


def test_configure_logging_from_yaml(tmp_path, monkeypatch):
    config = tmp_path / "logging.yaml"
    config.write_text(
        "version: 1\n"
        "disable_existing_loggers: false\n"
        "handlers:\n"
        "  quiet:\n"
        "    class: logging.NullHandler\n"
        "loggers:\n"
        "  tropdeg:\n"
        "    level: INFO\n"
        "    handlers: [quiet]\n"
    )
    monkeypatch.setenv("TROPDEG_LOGGING_CONFIG", str(config))
    reset_settings_cache()
    REAL_CONFIGURE_LOGGING(verbose=True)
    package_logger = logging.getLogger("tropdeg")
    assert package_logger.level == logging.DEBUG
    assert any(isinstance(h, logging.NullHandler) for h in package_logger.handlers)


def test_models_without_grid_use_the_configured_shape(capsys, tmp_path, monkeypatch):
    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps({"segments": [{"base": [0, 0], "dir": [1, -1]}], "parameters": {"k_max": 2}}))
    code, out, _ = run_cli(capsys, "classes", "--model", str(plain))
    assert code == 0
    assert set(csv_body(out)["shape"]) == {"simplex"}

    monkeypatch.setenv("TROPDEG_DEFAULT_SHAPE", "box")
    reset_settings_cache()
    code, out, _ = run_cli(capsys, "classes", "--model", str(plain))
    assert code == 0
    assert set(csv_body(out)["shape"]) == {"box"}
    assert "shape=box" in out
    code, out, _ = run_cli(capsys, "classes", "--model", model("anti_diagonal_segment.json"), "--k-max", "2")
    assert set(csv_body(out)["shape"]) == {"simplex"}


def test_star_report_is_identical_across_thread_counts(capsys):
    args = ("star", "--model", model("tropical_line_star.json"), "--k-max", "6")
    outputs = [run_cli(capsys, *args, "--workers", workers)[1] for workers in ("1", "1", "3")]
    assert outputs[0] == outputs[1] == outputs[2]
