import json
import math
import subprocess
import sys

import pytest

from hhaudit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_satisfied_exits_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^2", "--a", "0", "--b", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"] == {"checked": 2, "satisfied": 2, "violated": 0, "guarded_out": 0}

    def test_violation_exits_one(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "k2", "--fn", "x^2-5", "--a", "0", "--b", "2")
        assert code == 1
        doc = json.loads(out)
        assert doc["counts"]["violated"] == 1
        assert len(doc["findings"]) == 1
        assert doc["findings"][0]["fragile"] is True

    def test_domain_guard_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--target", "prop2", "--a", "1", "--b", "4")
        assert code == 2
        assert "3a - b" in err

    def test_unparseable_fn_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^^2", "--a", "0", "--b", "1")
        assert code == 2
        assert "offset 2" in err

    def test_unknown_target_exits_two(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--target", "nonsense", "--fn", "x", "--a", "0", "--b", "1")
        assert code == 2

    def test_missing_fn_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--target", "eq1", "--a", "0", "--b", "1")
        assert code == 2
        assert "--fn" in err

    def test_half_interval_exits_two(self, capsys):
        code, _, _ = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^2", "--a", "0")
        assert code == 2

    def test_integrate_guard_exits_two(self, capsys):
        code, _, err = run_cli(capsys, "integrate", "--fn", "log(x)", "--a", "0.1", "--b", "1", "--err", "1e-4")
        assert code == 2
        assert "log" in err


class TestVerify:
    def test_single_instance_reports(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "thm2", "--fn", "x^2", "--a", "0", "--b", "1")
        assert code == 0
        doc = json.loads(out)
        (report,) = doc["reports"]
        assert abs(report["lhs"] - 1.0 / 12.0) <= 1e-12
        assert abs(report["rhs"] - 0.5) <= 1e-12

    def test_thm3_needs_q_above_one(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--target", "thm3", "--fn", "x^2", "--a", "0", "--b", "1")
        assert code == 2
        assert "q > 1" in err

    def test_all_target_single_instance_guards_hoelder_forms(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "all", "--fn", "exp(x)", "--a", "0", "--b", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"]["guarded_out"] == 4  # thm3, thm5, thm6, cor1 at q = 1
        c = doc["counts"]
        assert c["checked"] == c["satisfied"] + c["violated"] + c["guarded_out"]

    def test_random_mode_deterministic(self, capsys):
        args = ("verify", "--target", "eq1", "--fn", "cosh(x)", "--trials", "20", "--seed", "11")
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_different_seeds_differ(self, capsys):
        _, out1, _ = run_cli(capsys, "verify", "--target", "eq1", "--fn", "x^2", "--trials", "5", "--seed", "1")
        _, out2, _ = run_cli(capsys, "verify", "--target", "eq1", "--fn", "x^2", "--trials", "5", "--seed", "2")
        assert out1 != out2

    def test_trial_index_recorded(self, capsys):
        _, out, _ = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^2", "--trials", "3", "--seed", "0")
        doc = json.loads(out)
        trials = {r["inputs"]["trial"] for r in doc["reports"]}
        assert trials == {0, 1, 2}

    def test_prop_targets(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "prop1", "--a", "1", "--b", "2", "--n", "2")
        assert code == 0
        doc = json.loads(out)
        labels = [r["label"] for r in doc["reports"]]
        assert labels == ["p1.display1", "p1.display2"]

    def test_prop6_and_prop8(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "prop6", "--p", "0.5", "--a", "1", "--b", "2")
        assert code == 0
        assert {r["label"] for r in json.loads(out)["reports"]} == {"prop6.i1", "prop6.i11", "prop6.mm"}
        code, out, _ = run_cli(capsys, "verify", "--target", "prop8", "--qbase", "0.5", "--a", "1", "--b", "2")
        assert code == 0

    def test_prop7_precondition(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--target", "prop7", "--p", "0.5", "--a", "1", "--b", "1.5")
        assert code == 2
        assert "p > 1" in err

    def test_lemma_targets(self, capsys):
        for target in ("lemma1", "lemma2"):
            code, out, _ = run_cli(capsys, "verify", "--target", target, "--fn", "exp(x)", "--a", "0", "--b", "1")
            assert code == 0
            (report,) = json.loads(out)["reports"]
            assert report["lhs"] <= 1e-8

    def test_pretty_mode(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^2", "--a", "0", "--b", "2", "--pretty")
        assert code == 0
        assert "k1.lower" in out and "checked=2" in out


class TestIntegrate:
    def test_certified_value(self, capsys):
        code, out, _ = run_cli(capsys, "integrate", "--fn", "x^2", "--a", "0", "--b", "1", "--err", "1e-3")
        assert code == 0
        doc = json.loads(out)
        assert doc["certified"] is True
        assert doc["certificate"] <= 1e-3
        assert abs(doc["t2"] - 1.0 / 3.0) <= doc["certificate"]

    def test_affine(self, capsys):
        code, out, _ = run_cli(capsys, "integrate", "--fn", "x", "--a", "0", "--b", "5", "--err", "1e-3")
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["t2"] - 12.5) <= 1e-12


class TestSpecial:
    def test_norm_i(self, capsys):
        code, out, _ = run_cli(capsys, "special", "normI", "--p", "0.5", "--x", "1")
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["value"] - 1.1752011936438014) <= 1e-9

    def test_bessel_k(self, capsys):
        code, out, _ = run_cli(capsys, "special", "besselK", "--p", "0.5", "--x", "1")
        assert code == 0
        assert abs(json.loads(out)["value"] - 0.4610685044478945) <= 1e-8

    def test_qdigamma_derivative(self, capsys):
        code, out, _ = run_cli(capsys, "special", "qdigamma", "--q", "0.5", "--x", "1", "--order", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["value"] > 0
        assert doc["tail_bound"] <= 1e-12

    def test_missing_params(self, capsys):
        code, _, err = run_cli(capsys, "special", "normI", "--x", "1")
        assert code == 2


class TestEnvOverride:
    def test_hh_tol_env(self, capsys, monkeypatch):
        # a loose tolerance flips the shifted half-value check back to satisfied
        monkeypatch.setenv("HH_TOL", "10.0")
        code, out, _ = run_cli(capsys, "verify", "--target", "k2", "--fn", "x^2-5", "--a", "0", "--b", "2")
        assert code == 0
        assert json.loads(out)["counts"]["violated"] == 0

    def test_bad_hh_tol(self, capsys, monkeypatch):
        monkeypatch.setenv("HH_TOL", "not-a-number")
        code, _, _ = run_cli(capsys, "verify", "--target", "k1", "--fn", "x^2", "--a", "0", "--b", "2")
        assert code == 2


def test_module_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "hhaudit", "verify", "--target", "k1", "--fn", "x^2", "--a", "0", "--b", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["counts"]["satisfied"] == 2
