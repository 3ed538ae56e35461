"""
Tests for the command line, report rendering and configuration loading
"""
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import json
from pathlib import Path

import pandas as pd
import pytest

from heckelab.cli import EXIT_ERROR, EXIT_FAILED, EXIT_OK, run
from heckelab.config import CACHE_ENV_VAR, Settings, load_config, resolve_cache_dir
from heckelab.exceptions import InputError
from heckelab.reports.generator import ReportGenerator


@pytest.fixture
def heckelab(tmp_path, capsys):
    """Run the command line with a private cache and return (exit code, stdout)."""
    def invoke(*argv):
        code = run([*argv, "--cache-dir", str(tmp_path / "cache")])
        return code, capsys.readouterr().out
    return invoke


def test_tau_prints_the_value(heckelab):
    assert heckelab("tau", "--n", "5") == (EXIT_OK, "4830\n")


def test_tau_as_json(heckelab):
    code, out = heckelab("tau", "--n", "2", "--json")
    assert code == EXIT_OK
    assert json.loads(out) == {"n": 2, "tau": -24}


def test_qexp_modulo_three(heckelab):
    assert heckelab("qexp", "--form", "delta", "--precision", "4", "--modulus", "3") == \
        (EXIT_OK, "0 1 0 0\n")


def test_qexp_c4(heckelab):
    code, out = heckelab("qexp", "--form", "c4", "--precision", "3")
    assert out == "1 240 2160\n"


def test_hecke_apply(heckelab):
    code, out = heckelab("hecke-apply", "--form", "delta", "--n", "2", "--precision", "3")
    assert code == EXIT_OK
    assert out == "0 -24 576\n"


def test_eigen(heckelab):
    assert heckelab("eigen", "--form", "c4", "--n", "2") == (EXIT_OK, "9\n")
    assert heckelab("eigen", "--form", "one", "--n", "2", "--precision", "1") == (EXIT_OK, "3/2\n")


def test_eigen_reports_a_non_eigenform_as_a_failed_check(heckelab):
    code, out = heckelab("eigen", "--form", "delta-power", "--i", "2", "--n", "2", "--json")
    assert code == EXIT_FAILED
    payload = json.loads(out)
    assert payload["passed"] is False
    assert payload["eigenvalue"] is None
    # T_2(Delta^2) has q-coefficient a_2(Delta^2) = 1 while Delta^2 starts at q^2
    assert payload["failures"] == [{"index": 1}]


def test_bcoeff(heckelab):
    assert heckelab("bcoeff", "--n", "2", "--e", "2") == (EXIT_OK, "384\n")


def test_compose_check(heckelab):
    code, out = heckelab("compose-check", "--m", "2", "--n", "2", "--k", "12", "--precision", "8",
                         "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["family"] == "hecke-composition"
    assert payload["passed"] is True
    assert payload["mode"] == "classical"
    code, out = heckelab("compose-check", "--m", "2", "--n", "4", "--k", "24", "--precision", "6",
                         "--normalization", "stable", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["mode"] == "stable"


def test_subgroup_commands(heckelab):
    assert heckelab("subgroup-count", "--m", "2", "--n", "2", "--d", "1", "--e", "2") == (EXIT_OK, "3\n")
    code, out = heckelab("subgroup-count", "--m", "2", "--n", "2", "--d", "1", "--e", "2",
                         "--census", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["census"] == 3
    code, _ = heckelab("subgroup-poly", "--m", "4", "--n", "6")
    assert code == EXIT_OK
    code, _ = heckelab("census", "--n", "6")
    assert code == EXIT_OK


def test_census_table(heckelab):
    code, out = heckelab("census", "--n", "12", "--m", "8", "--table", "--json")
    assert code == EXIT_OK
    rows = json.loads(out)["rows"]
    assert rows[0]["e"] == "e=10"
    assert rows[0]["d=0"] == "8+7"
    code, _ = heckelab("census", "--n", "12", "--table")
    assert code == EXIT_ERROR


def test_charpoly(heckelab):
    assert heckelab("charpoly", "--d", "2") == (EXIT_OK, "X^2 - 1080*X - 20468736\n")


def test_certify_galois(heckelab):
    code, out = heckelab("certify-galois", "--d", "2", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["status"] == "Certified"
    code, _ = heckelab("certify-galois")
    assert code == EXIT_ERROR


def test_maeda_scans(heckelab):
    code, out = heckelab("maeda-scan3", "--dmax", "20", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["details"]["found"] == [2, 3, 6, 9, 18]
    code, out = heckelab("maeda-scan2", "--dmax", "20", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["mode"] == "as_stated"


def test_maeda_cert_exit_codes(heckelab):
    code, out = heckelab("maeda-cert", "--d", "2", "--n", "7", "--verify", "--json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verdict"] is True
    assert payload["verified"] is True
    assert heckelab("maeda-cert", "--d", "4", "--n", "5")[0] == EXIT_FAILED
    assert heckelab("maeda-cert", "--d", "2", "--n", "3")[0] == EXIT_ERROR


def test_ramanujan_scan_exit_codes(heckelab):
    assert heckelab("ramanujan-scan", "--nmax", "500", "--modulus", "16")[0] == EXIT_OK
    code, out = heckelab("ramanujan-scan", "--nmax", "50", "--modulus", "16",
                         "--form", "classical", "--output", "csv")
    assert code == EXIT_FAILED
    assert out.splitlines()[0] == "n,lhs,rhs,modulus"
    assert out.splitlines()[1] == "3,12,4,16"


def test_thme_scan_is_independent_of_jobs(heckelab):
    payloads = []
    for jobs in ("1", "2"):
        code, out = heckelab("thmE-scan", "--emax", "3", "--nmax", "8", "--jobs", jobs, "--json")
        assert code == EXIT_OK
        payload = json.loads(out)
        payload.pop("runtime_ms")
        payload.pop("cache_hits")
        payloads.append(payload)
    assert payloads[0] == payloads[1]


def test_cache_commands(heckelab, tmp_path):
    code, out = heckelab("cache", "store", "--kind", "tau", "--precision", "30")
    assert code == EXIT_OK
    assert Path(out.strip()).name == "tau_i1_N30_mod0.txt"
    code, out = heckelab("cache", "load", "--kind", "tau", "--precision", "30")
    assert out.split()[:4] == ["0", "1", "-24", "252"]
    assert heckelab("cache", "verify")[0] == EXIT_OK
    assert heckelab("cache", "load", "--kind", "tau", "--precision", "31")[0] == EXIT_ERROR
    assert heckelab("cache", "store", "--kind", "tau")[0] == EXIT_ERROR


def test_usage_errors(heckelab):
    assert heckelab("bogus")[0] == EXIT_ERROR
    assert heckelab("tau")[0] == EXIT_ERROR
    assert heckelab("tau", "--n", "0")[0] == EXIT_ERROR
    assert heckelab("tau", "--n", "5", "--jobs", "0")[0] == EXIT_ERROR


def test_excel_export(heckelab, tmp_path):
    target = tmp_path / "report.xlsx"
    code, _ = heckelab("ramanujan-scan", "--nmax", "30", "--modulus", "16", "--form", "classical",
                       "--excel", str(target))
    assert code == EXIT_FAILED
    summary = pd.read_excel(target, sheet_name="Summary")
    assert "family" in set(summary["field"])
    failures = pd.read_excel(target, sheet_name="Failures")
    assert failures["n"].iloc[0] == 3


def test_report_generator_formats():
    payload = {"family": "demo", "passed": False,
               "failures": [{"n": 3, "lhs": 12, "rhs": 4}], "details": {"k": 1}}
    generator = ReportGenerator()
    rendered = generator.render(payload, "json")
    assert rendered.endswith("\n")
    assert json.loads(rendered) == payload
    assert list(json.loads(rendered)) == sorted(payload)
    assert generator.render(payload, "csv").splitlines() == ["n,lhs,rhs", "3,12,4"]
    plain = generator.render(payload, "plain")
    assert "failures: 1" in plain
    assert "family: demo" in plain
    with pytest.raises(InputError):
        generator.render(payload, "xml")


def test_report_generator_scalar_csv():
    csv = ReportGenerator().render({"n": 5, "tau": 4830, "rows": []}, "csv")
    assert csv.splitlines() == ["field,value", "n,5", "tau,4830"]


def test_save_json(tmp_path):
    target = tmp_path / "out.json"
    ReportGenerator().save_json({"a": 1}, str(target))
    assert json.loads(target.read_text(encoding="utf-8")) == {"a": 1}


def test_load_config(tmp_path):
    ini = tmp_path / "config.ini"
    ini.write_text("[galois]\nprime_budget = 50\n\n[runtime]\njobs = 3\n", encoding="utf-8")
    settings = load_config(ini)
    assert settings.prime_budget == 50
    assert settings.jobs == 3
    assert settings.census_bound == Settings().census_bound
    assert load_config(tmp_path / "missing.ini") == Settings()


def test_repository_config_matches_defaults():
    assert load_config() == Settings()


def test_cache_dir_precedence(monkeypatch, tmp_path):
    settings = Settings(cache_dir="from-config")
    monkeypatch.delenv(CACHE_ENV_VAR, raising=False)
    assert resolve_cache_dir(None, settings) == Path("from-config")
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "env"))
    assert resolve_cache_dir(None, settings) == tmp_path / "env"
    assert resolve_cache_dir("flag", settings) == Path("flag")
