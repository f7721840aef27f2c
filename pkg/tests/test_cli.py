"""Command-line behavior: outputs, exit codes, determinism, file emission.

The exit-code contract is 0 ok, 1 failed verification, 2 bad input or
usage, 3 precondition violation, 4 internal invariant violation. Codes 1
and 4 require forced failures, injected by monkeypatching.
"""

from __future__ import annotations

import json

import pytest

from prodiff import cli, verify
from prodiff.errors import InvariantViolation

DIFFEO = '{"kind":"diffeo","order":5,"coeffs":{"2":"1"}}'
FIELD = '{"kind":"field","order":4,"coeffs":{"1":"1"}}'


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compose_golden(capsys):
    code, out, _ = run(capsys, "compose",
                       '{"kind":"diffeo","order":4,"coeffs":{"2":"1"}}',
                       '{"kind":"diffeo","order":4,"coeffs":{"3":"1"}}')
    assert code == 0
    assert json.loads(out) == {
        "kind": "diffeo", "order": 4,
        "coeffs": {"2": "1", "3": "1", "4": "3"}}


def test_invert_both_algorithms(capsys):
    for algorithm in ("lagrange", "recursive"):
        code, out, _ = run(capsys, "invert", DIFFEO, "--algorithm", algorithm)
        assert code == 0
        assert json.loads(out)["coeffs"] == {
            "2": "-1", "3": "2", "4": "-5", "5": "14"}


def test_invert_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(DIFFEO))
    code, out, _ = run(capsys, "invert", "-")
    assert code == 0
    assert json.loads(out)["coeffs"]["2"] == "-1"


def test_invert_reads_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(DIFFEO, encoding="utf-8")
    code, out, _ = run(capsys, "invert", str(path))
    assert code == 0
    assert json.loads(out)["coeffs"]["2"] == "-1"


def test_exp_log_round_trip_through_cli(capsys):
    code, out, _ = run(capsys, "exp", FIELD)
    assert code == 0
    gamma = json.loads(out)
    assert gamma["order"] == 5
    code, out, _ = run(capsys, "log", json.dumps(gamma))
    assert code == 0
    assert json.loads(out) == json.loads(FIELD)


def test_exp_dump_matrix(capsys):
    code, out, _ = run(capsys, "exp", FIELD, "--dump-matrix")
    assert code == 0
    matrix = json.loads(out)["matrix"]
    assert matrix[1][1] == "1"
    assert len(matrix) == 6


def test_bch_golden(capsys):
    code, out, _ = run(capsys, "bch",
                       '{"kind":"field","order":5,"coeffs":{"1":"1"}}',
                       '{"kind":"field","order":5,"coeffs":{"2":"1"}}')
    assert code == 0
    assert json.loads(out)["coeffs"] == {
        "1": "1", "2": "1", "3": "1/2", "4": "1/6", "5": "-1/12"}


def test_norm_spaces(capsys):
    code, out, _ = run(capsys, "norm", DIFFEO, "--space", "w", "--sigma", "2")
    assert code == 0
    assert json.loads(out)["value"] == "1"
    code, out, _ = run(capsys, "norm", FIELD, "--space", "vt", "--t", "1")
    assert code == 0
    obj = json.loads(out)
    assert obj["lower"]["value"] == "1/2"
    assert obj["upper"]["value"] == "1"
    code, out, _ = run(capsys, "norm", FIELD, "--space", "op", "--t", "1",
                       "--dump-matrix")
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "lower_approx"
    assert "matrix" in obj


def test_norm_space_mismatch_is_a_precondition(capsys):
    code, _, err = run(capsys, "norm", FIELD, "--space", "w")
    assert code == 3
    assert "diffeomorphism" in err


def test_qnorm_value_and_bounds(capsys):
    code, out, _ = run(capsys, "qnorm", '{"components":{"3":{"(3)":"1"}}}',
                       "--upper", "--lower", "--columns", "20")
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == "2"
    assert obj["by_degree"] == {"3": "2"}
    assert obj["certificate"]["3"] == {"(1,2)": "1", "(2,1)": "-1"}
    assert obj["upper"]["certified"]["value"] == "2"
    assert obj["lower"]["scale"] == "1"


def test_qnorm_scales_the_grading(capsys):
    code, out, _ = run(capsys, "qnorm", '{"components":{"3":{"(3)":"1"}}}',
                       "--t", "2")
    assert code == 0
    assert json.loads(out)["value"] == "16"


def test_qnorm_table(capsys):
    code, out, _ = run(capsys, "qnorm", "--table", "Ln", "--nmax", "4",
                       "--columns", "10")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["exact"] for r in rows] == ["1", "1", "2", "2"]
    assert all(r["sandwich_ok"] for r in rows)


def test_qnorm_upper_rejects_products(capsys):
    code, _, err = run(capsys, "qnorm", '{"components":{"3":{"(1,2)":"1"}}}',
                       "--upper")
    assert code == 3
    assert "single-index" in err


def test_report_membership_csv(capsys, tmp_path):
    target = tmp_path / "m.csv"
    code, out, _ = run(capsys, "report", "membership", "--rule", "factorial",
                       "--r", "1", "--order", "12", "--format", "csv",
                       "--output", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.startswith("j,indicator")
    assert "classification,small_sigma" in text


def test_report_qtable_figure(capsys, tmp_path):
    figure = tmp_path / "q.png"
    code, out, _ = run(capsys, "report", "qtable", "--nmax", "3",
                       "--columns", "8", "--figure", str(figure))
    assert code == 0
    assert json.loads(out)["kind"] == "qtable"
    assert figure.stat().st_size > 0


def test_membership_figure(capsys, tmp_path):
    figure = tmp_path / "m.png"
    code, _, _ = run(capsys, "report", "membership", "--rule", "geometric",
                     "--order", "10", "--figure", str(figure),
                     "--output", str(tmp_path / "m.json"))
    assert code == 0
    assert figure.stat().st_size > 0


def test_verify_is_byte_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "norms", "--seed", "7")
    code2, out2, _ = run(capsys, "verify", "norms", "--seed", "7")
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.encode("utf-8") == out2.encode("utf-8")


def test_exit_codes_for_bad_input(capsys):
    code, _, err = run(capsys, "compose", '{"kind":"diffeo","bad":1}', DIFFEO)
    assert code == 2
    assert "bad" in err
    code, _, _ = run(capsys, "compose", "not json {", DIFFEO)
    assert code == 2
    code, _, _ = run(capsys, "compose", "/nonexistent/path.json", DIFFEO)
    assert code == 2
    code, _, _ = run(capsys, "verify", "nosuch")
    assert code == 2


def test_exit_code_for_usage_error(capsys):
    assert cli.main(["report"]) == 2
    assert cli.main([]) == 2
    assert cli.main(["norm", DIFFEO]) == 2  # --space is required


def test_exit_code_for_preconditions(capsys):
    code, _, _ = run(capsys, "log", '{"kind":"diffeo","order":1}')
    assert code == 3
    code, _, _ = run(capsys, "norm", DIFFEO, "--space", "w", "--sigma", "-1")
    assert code == 3


def test_exit_code_for_forced_invariant_violation(capsys, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("forced for the fixture")

    monkeypatch.setattr("prodiff.cli.series.invert_lagrange", broken)
    code, _, err = run(capsys, "invert", DIFFEO)
    assert code == 4
    assert "invariant" in err


def test_exit_code_for_failed_verification(capsys, monkeypatch):
    failing = verify.CheckResult("forced", 1, False,
                                 {"instance": 0, "input": None, "detail": "x"})

    def fake_suite(rng, order):
        return [failing]

    monkeypatch.setitem(verify.SUITES, "norms", (fake_suite, 12))
    code, out, _ = run(capsys, "verify", "norms")
    assert code == 1
    assert json.loads(out)["all_passed"] is False


def test_output_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "result.json"
    code, out, _ = run(capsys, "invert", DIFFEO, "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["coeffs"]["2"] == "-1"
