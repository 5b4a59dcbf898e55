"""
test_cli.py
Command-line surface: exit codes, report contents, seeding and descriptor errors.
"""
import json
import os

import pytest

import main
import schemas
from probabilistic_models import build_model
from verification_suites import validation_checks

DOCS = os.path.join(os.path.dirname(__file__), "docs")


def _doc(name):
    return os.path.join(DOCS, name)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("JORDAN_GPT_SEED", "JORDAN_GPT_TOL", "JORDAN_GPT_SAMPLES"):
        monkeypatch.delenv(name, raising=False)


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def test_validate_qubit(capsys):
    assert main.run(["model", "validate", _doc("qubit.json")]) == main.EXIT_PASS
    report = _report(capsys)
    assert report["suite"] == "model.validate"
    assert report["passed"]
    assert report["seed"] == 0
    names = [check["name"] for check in report["checks"]]
    assert names == sorted(names)
    assert "algebra.jordan_identity[qubit]" in names


def test_validate_builtin_by_name(capsys):
    assert main.run(["model", "validate", "spin4"]) == main.EXIT_PASS
    assert _report(capsys)["passed"]


def test_square_bit_fails_sharpness(capsys):
    assert main.run(["check", "sharpness", _doc("gbit.json")]) == main.EXIT_FAIL
    report = _report(capsys)
    assert not report["passed"]
    (check,) = report["checks"]
    assert check["name"] == "sharpness[gbit]"
    assert check["anchor"]
    assert any(note.startswith("x0:") for note in check["notes"])


def test_gbit_demo_fails(capsys):
    assert main.run(["demo", "gbit"]) == main.EXIT_FAIL
    report = _report(capsys)
    failed = {check["name"] for check in report["checks"] if not check["passed"]}
    assert "sharpness[gbit]" in failed
    assert "spectrality.centroid[gbit]" in failed
    assert "model.maximally_mixed[gbit]" not in failed


def test_product_recovery_on_complex_rank_three(capsys):
    assert main.run(["theorem", "thm1", "--kind", "complex", "--rank", "3"]) == main.EXIT_PASS
    report = _report(capsys)
    recovery = next(c for c in report["checks"] if c["name"] == "thm1.product_recovery[ComplexHerm(3)]")
    assert recovery["worst_residual"] <= 1e-8
    assert recovery["notes"]


def test_dagger_checks_need_complex_kind(capsys):
    assert main.run(["theorem", "thm3", "--kind", "real", "--rank", "2"]) == main.EXIT_USAGE
    assert "complex" in capsys.readouterr().err


def test_dagger_record_uses_the_strict_tolerance(capsys):
    assert main.run(["theorem", "thm3", "--kind", "complex", "--rank", "2"]) == main.EXIT_PASS
    report = _report(capsys)
    dagger = next(c for c in report["checks"] if c["name"].startswith("thm3.dagger["))
    assert dagger["tolerance"] == 1e-12
    assert dagger["passed"]
    assert dagger["worst_residual"] <= 1e-12


def test_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "backend": "jordan",\n  "kind": }\n', encoding="utf-8")
    assert main.run(["model", "validate", str(path)]) == main.EXIT_USAGE
    err = capsys.readouterr().err
    assert "line 3" in err
    assert "column" in err


def test_unknown_kind(tmp_path, capsys):
    path = tmp_path / "octonion.json"
    path.write_text(json.dumps({"backend": "jordan", "kind": "octonion", "size": 3}), encoding="utf-8")
    assert main.run(["model", "validate", str(path)]) == main.EXIT_USAGE
    assert "octonion" in capsys.readouterr().err


def test_descriptor_schema_errors(tmp_path, capsys):
    path = tmp_path / "future.json"
    path.write_text(json.dumps({"schema_version": 2, "backend": "jordan", "kind": "real", "size": 2}),
                    encoding="utf-8")
    assert main.run(["model", "validate", str(path)]) == main.EXIT_USAGE
    assert "schema_version" in capsys.readouterr().err


def test_polytopic_model_errors(tmp_path):
    path = tmp_path / "lopsided.json"
    path.write_text(json.dumps({
        "backend": "polytopic",
        "outcomes": ["a", "b", "c"],
        "tests": [["a", "b"], ["c"]],
        "vertices": [[0.5, 0.5, 1.0]],
    }), encoding="utf-8")
    assert main.run(["check", "sharpness", str(path)]) == main.EXIT_USAGE


@pytest.mark.parametrize("suite", ["conjugate", "selfdual", "filters"])
def test_classical_model_runs_jordan_suites(suite, capsys):
    assert main.run(["check", suite, "classical3"]) == main.EXIT_PASS
    assert _report(capsys)["passed"]


def test_polytopic_model_has_no_conjugate(capsys):
    assert main.run(["check", "conjugate", "gbit"]) == main.EXIT_USAGE
    assert "classical" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check", "nonsense", "qubit"],
    ["model", "validate", "no-such-model"],
    ["--tol", "-1", "model", "validate", "qubit"],
])
def test_usage_errors(argv):
    assert main.run(argv) == main.EXIT_USAGE


def test_same_seed_same_output(capsys):
    argv = ["--seed", "5", "check", "spectrality", "qubit"]
    assert main.run(argv) == main.EXIT_PASS
    first = capsys.readouterr().out
    assert main.run(argv) == main.EXIT_PASS
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["seed"] == 5


def test_environment_seed_overrides_flag(monkeypatch, capsys):
    monkeypatch.setenv("JORDAN_GPT_SEED", "11")
    assert main.run(["--seed", "5", "model", "validate", "qubit"]) == main.EXIT_PASS
    assert _report(capsys)["seed"] == 11


def test_bad_environment_seed(monkeypatch):
    monkeypatch.setenv("JORDAN_GPT_SEED", "eleven")
    assert main.run(["model", "validate", "qubit"]) == main.EXIT_USAGE


def test_report_writes_file(tmp_path, monkeypatch, capsys):
    qubit = build_model(main.load_descriptor("qubit"))
    monkeypatch.setattr(main, "full_report_checks", lambda seed, tol: validation_checks(qubit, seed, tol))
    out = tmp_path / "report.json"
    assert main.run(["report", "--out", str(out), "--seed", "3", "--tol", "1e-9"]) == main.EXIT_PASS
    assert capsys.readouterr().out == ""
    report = schemas.Report.model_validate_json(out.read_text(encoding="utf-8"))
    assert report.suite == "report"
    assert report.seed == 3
    assert report.tolerance == 1e-9
    assert report.passed


def test_descriptor_round_trip():
    descriptor = main.load_descriptor(_doc("gbit.json"))
    again = schemas.ModelDescriptor.model_validate_json(descriptor.to_json())
    assert again == descriptor
    assert build_model(again).same_as(build_model(descriptor))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__]))
