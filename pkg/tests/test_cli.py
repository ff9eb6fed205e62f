"""Command-line interface: exit codes, formats, determinism."""

from __future__ import annotations

import json

import pytest

from jordconf.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_hopf_json(capsys):
    code, out, _ = run(capsys, "verify", "hopf", "--family", "time",
                       "--mu", "sym", "--nu", "sym", "--order", "4",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "jordconf.report/1"
    assert data["passed"] is True
    suites = {r["suite"] for r in data["reports"]}
    assert "coproduct-homomorphism" in suites
    for report in data["reports"]:
        for check in report["checks"]:
            assert check["status"] == "pass"
            assert "anchor" in check and check["anchor"]
            assert "seconds" not in check


def test_verify_algebra_text(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--family", "time",
                       "--order", "4")
    assert code == 0
    assert "overall: PASS" in out


def test_reports_are_byte_identical(capsys):
    args = ("verify", "rmatrix", "--family", "time", "--format", "json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_timings_flag_adds_seconds(capsys):
    code, out, _ = run(capsys, "verify", "tables", "--format", "json", "--timings")
    assert code == 0
    data = json.loads(out)
    assert "total_seconds" in data["reports"][0]


def test_tables_text_and_json(capsys):
    code, out, _ = run(capsys, "tables", "--which", "1")
    assert code == 0
    assert "U_tau(so(2,2))" in out
    code, out, _ = run(capsys, "tables", "--which", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "space"
    assert len(data["cells"]) == 9


def test_apply_discrete_wave_operator(capsys):
    code, out, _ = run(capsys, "apply", "--family", "time",
                       "(nu*dx^2 - mu*Dt^2)", "mu*x^2 + nu*t*(t-tau)")
    assert code == 0
    assert out.strip() == "0"


def test_apply_shift(capsys):
    code, out, _ = run(capsys, "apply", "Tt^-1", "t")
    assert code == 0
    assert out.strip() == "t - tau"


def test_apply_json(capsys):
    code, out, _ = run(capsys, "apply", "--format", "json", "Dt", "t*(t-tau)")
    assert code == 0
    assert json.loads(out)["result"] == "2*t"


def test_apply_specialized_parameters(capsys):
    code, out, _ = run(capsys, "apply", "--mu", "1", "--nu", "1",
                       "(nu*dx^2 - mu*Dt^2)", "mu*x^2 + nu*t*(t-tau)")
    assert code == 0
    assert out.strip() == "0"


def test_negative_rational_parameters(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--family", "time",
                       "--mu", "-1/2", "--nu", "-3", "--order", "3",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] and data["reports"][0]["config"]["mu"] == "-1/2"


def test_op_canonical_form(capsys):
    code, out, _ = run(capsys, "op", "Dt*t")
    assert code == 0
    assert out.strip() == "Tt - tau^-1*t + tau^-1*t*Tt"
    code, out, _ = run(capsys, "op", "Dt", "--limit")
    assert code == 0
    assert out.strip() == "dt"
    code, out, _ = run(capsys, "op", "nu*dx^2 - mu*Dt^2", "--mu", "1", "--nu", "0",
                       "--format", "json")
    assert code == 0
    assert "Tt" in json.loads(out)["canonical"]


def test_op_negative_power_on_parameter_rejected(capsys):
    code, _, err = run(capsys, "op", "1/2*tau^-1", "--limit")
    assert code == 2 and "usage error" in err


def test_matrix_dump(capsys):
    code, out, _ = run(capsys, "matrix", "D")
    assert code == 0
    assert out.splitlines()[0].split() == ["0", "1", "0", "0"]
    code, out, _ = run(capsys, "matrix", "R", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rows"] == data["cols"] == 16
    assert data["entries"][0][0] == "1 - tau^2*nu"


def test_bad_parameter_token_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "algebra", "--mu", "bogus")
    assert code == 2
    assert "usage error" in err


def test_unknown_suite_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == 2


def test_classical_family_rejected_for_matrix_suite(capsys):
    code, _, err = run(capsys, "verify", "rmatrix", "--family", "classical")
    assert code == 2


def test_expression_error_is_usage_error(capsys):
    code, _, err = run(capsys, "apply", "dx^-1", "x")
    assert code == 2
    assert "usage error" in err


def test_order_env_override(capsys, monkeypatch):
    monkeypatch.setenv("JORDCONF_ORDER", "3")
    code, out, _ = run(capsys, "verify", "algebra", "--family", "time",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["reports"][0]["config"]["order"] == 3
    monkeypatch.setenv("JORDCONF_ORDER", "-2")
    code, _, err = run(capsys, "verify", "algebra", "--family", "time")
    assert code == 2


def test_failing_check_gives_exit_one(capsys, monkeypatch):
    # A mutated bracket table must drive the exit status to 1.
    from jordconf import cli as cli_mod
    from jordconf.uea import FamilyConfig, commutator_table, diamond_check
    from jordconf.poly import ParamPoly

    def broken(args):
        from jordconf.uea import algebra
        config = FamilyConfig("time", order=args.order)
        table = commutator_table(config)
        alg = algebra(config)
        table[("P", "K")] = table[("P", "K")] - alg.gen("H").scale(ParamPoly.var("tau"))
        return [diamond_check(config, table=table)]

    monkeypatch.setitem(cli_mod._RUNNERS, "algebra", broken)
    code, out, _ = run(capsys, "verify", "algebra", "--order", "3")
    assert code == 1
    assert "FAIL" in out
