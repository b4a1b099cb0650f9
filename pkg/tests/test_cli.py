"""Command-line driver contract tests: exit codes, determinism, file I/O."""

import json

import pytest

from whlab import cli


def run_cli(args):
    return cli.main(args)


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run_cli(["verify", "nonsense"])
    assert exc.value.code == cli.EXIT_USAGE


def test_jordan_suite_passes(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run_cli(["verify", "jordan", "--seed", "3", "--out", str(out)])
    assert code == cli.EXIT_OK
    report = json.loads(out.read_text())
    assert report["suite"] == "jordan"
    assert all(case["status"] == "pass" for case in report["cases"])
    names = [case["name"] for case in report["cases"]]
    assert names == sorted(names)


def test_report_bytes_are_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert run_cli(["verify", "fell", "--seed", "11", "--out", str(a)]) == cli.EXIT_OK
    assert run_cli(["verify", "fell", "--seed", "11", "--out", str(b)]) == cli.EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_homotopy_model_flag(tmp_path):
    out = tmp_path / "h.json"
    code = run_cli(["verify", "homotopy", "--model", "halfline", "--trials", "10", "--out", str(out)])
    assert code == cli.EXIT_OK
    report = json.loads(out.read_text())
    names = [case["name"] for case in report["cases"]]
    assert "homotopy.halfline" in names
    assert "homotopy.unitary" not in names


def test_injected_failure_exit_code_and_file(tmp_path):
    out = tmp_path / "fail.json"
    code = run_cli(["verify", "jordan", "--inject-failure", "--out", str(out)])
    assert code == cli.EXIT_VERIFICATION
    report = json.loads(out.read_text())
    statuses = {case["name"]: case["status"] for case in report["cases"]}
    assert statuses["injected_failure"] == "fail"


def test_unwritable_output_is_io_error(tmp_path):
    code = run_cli(["verify", "jordan", "--out", str(tmp_path)])  # a directory
    assert code == cli.EXIT_IO


def test_env_tolerance_default(tmp_path, monkeypatch):
    out = tmp_path / "env.json"
    monkeypatch.setenv("WHLAB_TOL", "1e-7")
    assert run_cli(["verify", "jordan", "--out", str(out)]) == cli.EXIT_OK
    report = json.loads(out.read_text())
    assert report["config"]["tol"] == 1e-7


def test_fell_converge_roundtrip(tmp_path):
    payload = {
        "ambient": "R",
        "window": [-5.0, 5.0],
        "step": 0.25,
        "sets": [{"kind": "ray", "endpoint": 1.0} for _ in range(6)],
    }
    src = tmp_path / "sets.json"
    src.write_text(json.dumps(payload))
    out = tmp_path / "conv.json"
    assert run_cli(["fell", "converge", "--input", str(src), "--out", str(out)]) == cli.EXIT_OK
    report = json.loads(out.read_text())
    assert report["converged"] is True
    assert len(report["grid"]) == len(report["liminf"]) == len(report["limsup"])


def test_fell_converge_divergent(tmp_path):
    payload = {
        "ambient": "R",
        "window": [-5.0, 5.0],
        "step": 0.25,
        "sets": [{"kind": "ray", "endpoint": float(n % 2)} for n in range(12)],
    }
    src = tmp_path / "sets.json"
    src.write_text(json.dumps(payload))
    out = tmp_path / "conv.json"
    assert run_cli(["fell", "converge", "--input", str(src), "--out", str(out)]) == cli.EXIT_OK
    assert json.loads(out.read_text())["converged"] is False


def test_fell_converge_missing_file():
    assert run_cli(["fell", "converge", "--input", "/nonexistent/sets.json"]) == cli.EXIT_USAGE


def test_fell_converge_malformed_json(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text("{not json")
    assert run_cli(["fell", "converge", "--input", str(src)]) == cli.EXIT_USAGE


def test_fell_converge_bad_schema(tmp_path):
    src = tmp_path / "bad2.json"
    src.write_text(json.dumps({"ambient": "R", "window": [0, 1], "sets": [{"kind": "blob"}]}))
    assert run_cli(["fell", "converge", "--input", str(src)]) == cli.EXIT_USAGE


def test_json_goes_to_stdout_without_out(capsys):
    code = run_cli(["verify", "jordan", "--trials", "5"])
    assert code == cli.EXIT_OK
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report["suite"] == "jordan"


def test_empty_cases_report_is_valid_json(tmp_path):
    from whlab import serialize

    out = tmp_path / "empty.json"
    assert cli._emit({"suite": "demo", "cases": []}, str(out)) == cli.EXIT_OK
    assert json.loads(out.read_text()) == {"suite": "demo", "cases": []}
    assert serialize.canonical_json({"suite": "demo", "cases": []}) == '{"cases":[],"suite":"demo"}'
