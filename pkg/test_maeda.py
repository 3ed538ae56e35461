"""
Tests for the Maeda scans, certificates and the Ramanujan / b_n^e congruence suites
"""
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import pytest

from heckelab.calculators import maeda
from heckelab.calculators.arith import sigma_k, sigma_nonzero_mod3
from heckelab.data_providers.delta_provider import DeltaPowerProvider
from heckelab.exceptions import InputError


@pytest.fixture
def provider():
    return DeltaPowerProvider()


def test_thresholds():
    assert [maeda.p2_threshold(d) for d in range(8)] == [3, 3, 2, 1, 2, 2, 2, 1]
    assert maeda.p2_threshold(7, "uniform3") == 3
    with pytest.raises(InputError):
        maeda.p2_threshold(2, "other")


def test_theorem_e_modulus():
    assert [maeda.theorem_e_modulus(e) for e in range(8)] == [8, 8, 4, 2, 4, 4, 8, 2]
    assert maeda.theorem_e_modulus(9) == 8


def test_cond1_p3(provider):
    assert maeda.cond1_p3(2, provider).passed
    assert maeda.cond1_p3(3, provider).passed
    result = maeda.cond1_p3(4, provider)
    assert not result.passed
    assert result.witness == 1
    with pytest.raises(InputError):
        maeda.cond1_p3(1, provider)
    with pytest.raises(InputError):
        maeda.cond1_p3(1001, provider)


def test_scan_cond1_p3_small(provider):
    assert maeda.scan_cond1_p3(2, provider) == [2]
    assert maeda.scan_cond1_p3(30, provider) == [2, 3, 6, 9, 18, 27]


def test_scan_agrees_with_single_checks(provider):
    found = maeda.scan_cond1_p3(40, provider)
    assert found == [d for d in range(2, 41) if maeda.cond1_p3(d, provider).passed]
    found = maeda.scan_cond1_p2(40, provider=provider)
    assert found == [d for d in range(2, 41) if maeda.cond1_p2(d, provider=provider).passed]


def test_cond1_p2(provider):
    result = maeda.cond1_p2(2, provider=provider)
    assert (result.passed, result.exponent) == (True, 3)
    result = maeda.cond1_p2(4, provider=provider)
    assert (result.passed, result.exponent) == (True, 3)
    result = maeda.cond1_p2(3, provider=provider)
    assert (result.passed, result.exponent, result.witness) == (True, 2, 1)
    assert not maeda.cond1_p2(3, "uniform3", provider).passed


def test_p2_scan_contains_published_values(provider):
    found = maeda.scan_cond1_p2(64, provider=provider)
    for d in maeda.PUBLISHED_P2_SET:
        if d <= 64:
            assert d in found


def test_p2_report(provider):
    report = maeda.p2_scan_report(40, provider=provider)
    assert report.family == "maeda-p2-condition1"
    assert report.passed
    assert set(report.details["modes"]) == set(maeda.P2_MODES)
    assert report.details["published"] == [2, 4, 6, 8, 12, 16, 24, 32]
    assert 3 in report.details["modes"]["as_stated"]["extra"]


def test_p3_report(provider):
    report = maeda.p3_scan_report(100, provider)
    assert report.passed
    assert report.details["found"] == [2, 3, 6, 9, 18, 27, 54, 81]
    assert report.range == (2, 100)


def test_cond2():
    assert maeda.cond2(4, 3)
    assert maeda.cond2(7, 3)
    assert maeda.cond2(9, 2, 1)
    assert not maeda.cond2(5, 3)
    assert maeda.cond2(5, 2, 2)
    assert not maeda.cond2(5, 2, 1)
    with pytest.raises(InputError):
        maeda.cond2(3, 3)
    with pytest.raises(InputError):
        maeda.cond2(2, 2, 1)
    with pytest.raises(InputError):
        maeda.cond2(5, 5)


def test_cond2_matches_sigma():
    for n in range(1, 2000):
        if n % 3:
            assert maeda.cond2(n, 3) == (sigma_k(n) % 3 != 0)
        if n % 2:
            for e in (1, 2, 3):
                assert maeda.cond2(n, 2, e) == (sigma_k(n) % 2 ** e != 0)


def test_certificate_on_the_three_side(provider):
    certificate = maeda.maeda_certificate(2, 7, 3, provider)
    assert certificate.verdict
    assert certificate.modulus == 3
    assert certificate.condition1 and certificate.condition2
    assert certificate.nonvanishing_value == 2
    assert [link.citation for link in certificate.chain] == \
        [maeda.THEOREM_E, maeda.AHLGREN, maeda.GHITZA_MCANDREW]
    assert maeda.verify_certificate(certificate)


def test_certificate_on_the_two_side(provider):
    certificate = maeda.maeda_certificate(2, 5, 2, provider)
    assert certificate.modulus == 4
    assert certificate.verdict
    assert certificate.nonvanishing_value == 2
    assert maeda.verify_certificate(certificate)


def test_certificate_failing_condition1(provider):
    certificate = maeda.maeda_certificate(4, 5, 3, provider)
    assert not certificate.condition1
    assert not certificate.verdict
    assert certificate.nonvanishing_value is None
    assert maeda.verify_certificate(certificate)


def test_certificate_input_errors(provider):
    with pytest.raises(InputError) as excinfo:
        maeda.maeda_certificate(2, 3, 3, provider)
    assert "3 | n" in str(excinfo.value)
    with pytest.raises(InputError):
        maeda.maeda_certificate(2, 4, 3, provider)
    with pytest.raises(InputError):
        maeda.maeda_certificate(1, 5, 3, provider)
    with pytest.raises(InputError):
        maeda.maeda_certificate(3, 4, 2, provider)


def test_certificate_records_condition1_data(provider):
    certificate = maeda.maeda_certificate(2, 5, 2, provider)
    assert (certificate.condition1_exponent, certificate.decisive_exponent) == (3, 2)
    assert certificate.condition1_witness is None

    certificate = maeda.maeda_certificate(3, 5, 2, provider)
    assert certificate.condition1
    assert certificate.condition1_exponent == 2
    assert certificate.condition1_witness == 1
    assert certificate.decisive_exponent == 1
    assert certificate.modulus == 2

    certificate = maeda.maeda_certificate(4, 5, 3, provider)
    assert certificate.condition1_witness == 1
    assert certificate.condition1_exponent is None
    assert certificate.to_dict()["condition1_witness"] == 1


def test_certificate_needs_verified_t2_range(provider, monkeypatch):
    monkeypatch.setattr(maeda, "T2_VERIFIED_MAX_WEIGHT", 12)
    certificate = maeda.maeda_certificate(2, 7, 3, provider)
    assert certificate.condition1 and certificate.condition2
    assert not certificate.chain[2].satisfied
    assert not certificate.verdict


def test_tampered_certificate_fails_verification(provider):
    certificate = maeda.maeda_certificate(2, 7, 3, provider)
    certificate.nonvanishing_value = 1
    assert not maeda.verify_certificate(certificate)


def test_certificate_to_dict(provider):
    payload = maeda.maeda_certificate(2, 7, 3, provider).to_dict()
    assert payload["verdict"] is True
    assert len(payload["chain"]) == 3


def test_ramanujan_stable_form(provider):
    for modulus in maeda.RAMANUJAN_MODULI:
        report = maeda.ramanujan_scan(2000, modulus, provider=provider)
        assert report.passed, (modulus, report.failures[:3])
        assert report.details["failure_count"] == 0


def test_ramanujan_classical_form(provider):
    assert maeda.ramanujan_scan(2000, 3, "classical", provider).passed
    assert maeda.ramanujan_scan(2000, 8, "classical", provider).passed
    report = maeda.ramanujan_scan(200, 16, "classical", provider)
    assert not report.passed
    assert report.failures[0]["n"] == 3
    assert report.failures[0]["lhs"] == 12
    assert report.failures[0]["rhs"] == 4
    assert report.details["failure_count"] == len(report.failures)


def test_ramanujan_checked_count(provider):
    report = maeda.ramanujan_scan(30, 3, provider=provider)
    assert report.checked == 20
    assert report.range == (1, 30)


def test_ramanujan_validation(provider):
    with pytest.raises(InputError):
        maeda.ramanujan_scan(100, 5, provider=provider)
    with pytest.raises(InputError):
        maeda.ramanujan_scan(0, 3, provider=provider)
    with pytest.raises(InputError):
        maeda.ramanujan_scan(100, 3, "other", provider)


def test_theorem_e_scan(provider):
    report = maeda.thmE_scan(4, 12, provider)
    assert report.passed, report.failures
    # e = 1..4, odd n on the 2-side and n prime to 3 on the 3-side
    assert report.checked == 4 * (6 + 8)


def test_theorem_e_scan_with_workers(provider):
    sequential = maeda.thmE_scan(3, 8, provider).to_dict()
    parallel = maeda.thmE_scan(3, 8, DeltaPowerProvider(), jobs=2).to_dict()
    for payload in (sequential, parallel):
        payload.pop("runtime_ms")
        payload.pop("cache_hits")
    assert sequential == parallel


@pytest.mark.slow
def test_p3_scan_reproduces_published_set(provider):
    assert maeda.scan_cond1_p3(500, provider) == list(maeda.PUBLISHED_P3_SET)
    assert maeda.p3_pattern_probe(500, provider).passed


@pytest.mark.slow
def test_p2_published_values_pass(provider):
    found = maeda.scan_cond1_p2(500, provider=provider)
    assert set(maeda.PUBLISHED_P2_SET) <= set(found)


@pytest.mark.slow
def test_ramanujan_acceptance_ranges(provider):
    assert maeda.ramanujan_scan(10 ** 5, 3, provider=provider).passed
    assert maeda.ramanujan_scan(10 ** 5, 8, provider=provider).passed
    assert maeda.ramanujan_scan(10 ** 5, 16, provider=provider).passed


@pytest.mark.slow
def test_theorem_e_acceptance_range(provider):
    assert maeda.thmE_scan(16, 50, provider).passed
