"""
Tests for Hecke matrices, characteristic polynomials and Galois certification
"""
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import numpy as np
import pytest

from heckelab.calculators import galois
from heckelab.data_providers.delta_provider import DeltaPowerProvider
from heckelab.exceptions import InputError, ResourceLimitError
from heckelab.models.certificates import SquarefreeFailure, Verdict, VerdictStatus
from heckelab.models.polynomial import IntPolynomial


def poly(*descending):
    return IntPolynomial.from_descending(descending)


@pytest.fixture
def provider():
    return DeltaPowerProvider()


def test_int_polynomial():
    f = poly(1, 0, -1)
    assert f.coefficients == (-1, 0, 1)
    assert f.degree == 2
    assert f.is_monic
    assert f(3) == 8
    assert str(poly(1, -1080, -20468736)) == "X^2 - 1080*X - 20468736"
    assert IntPolynomial((1, 2, 0, 0)).degree == 1
    with pytest.raises(InputError):
        IntPolynomial((0, 0))


def test_hecke_matrix(provider):
    assert galois.hecke_matrix(2, 1, provider) == [[-24]]
    assert galois.hecke_matrix(2, 2, provider) == [[384, 20736000], [1, 696]]
    with pytest.raises(InputError):
        galois.hecke_matrix(2, 0, provider)
    with pytest.raises(ResourceLimitError):
        galois.hecke_matrix(40, 20, provider, budget=1000)


def test_char_poly(provider):
    assert galois.char_poly([[1, 2], [3, 4]]).descending() == [1, -5, -2]
    assert galois.char_poly([]).descending() == [1]
    f = galois.char_poly(galois.hecke_matrix(2, 2, provider))
    assert f.descending() == [1, -1080, -20468736]
    with pytest.raises(InputError):
        galois.char_poly([[1, 2]])


def test_char_poly_weight_36(provider):
    f = galois.char_poly(galois.hecke_matrix(2, 3, provider))
    assert f.degree == 3
    assert f.is_monic
    # trace of T_2 is the sum of the diagonal entries
    matrix = galois.hecke_matrix(2, 3, provider)
    assert -f.coefficients[2] == sum(matrix[i][i] for i in range(3))


def _evaluate_at_matrix(f, matrix):
    """f(A) by Horner's rule with exact integer entries."""
    a = np.array(matrix, dtype=object)
    result = np.zeros_like(a)
    identity = np.identity(len(matrix), dtype=object)
    for c in f.descending():
        result = result.dot(a) + c * identity
    return result


def test_cayley_hamilton_on_random_matrices():
    rng = np.random.default_rng(20241)
    for size in range(1, 7):
        for _ in range(5):
            matrix = rng.integers(-50, 51, size=(size, size)).tolist()
            f = galois.char_poly(matrix)
            assert f.degree == size and f.is_monic
            assert not _evaluate_at_matrix(f, matrix).any(), matrix


def test_cayley_hamilton_on_hecke_matrices(provider):
    for d in range(1, 5):
        matrix = galois.hecke_matrix(2, d, provider)
        assert not _evaluate_at_matrix(galois.char_poly(matrix), matrix).any(), d


def test_t1_is_the_identity(provider):
    for d in range(1, 7):
        identity = [[int(row == col) for col in range(d)] for row in range(d)]
        assert galois.hecke_matrix(1, d, provider) == identity


def test_weight_12_trace_is_tau(provider):
    for n in range(1, 51):
        matrix = galois.hecke_matrix(n, 1, provider)
        assert matrix[0][0] == provider.tau(n), n


def test_hecke_matrices_commute(provider):
    for d in range(1, 7):
        matrices = {n: np.array(galois.hecke_matrix(n, d, provider), dtype=object)
                    for n in range(1, 7)}
        for m in range(1, 7):
            for n in range(m + 1, 7):
                left = matrices[m].dot(matrices[n])
                right = matrices[n].dot(matrices[m])
                assert (left == right).all(), (m, n, d)


def test_discriminant():
    assert galois.discriminant(poly(1, -1, -1)) == 5
    assert galois.discriminant(poly(1, 0, -1, -1)) == -23
    assert galois.discriminant(poly(1, 0, -3, 1)) == 81


def test_ddf_degrees():
    assert galois.ddf_degrees(poly(1, 0, 1), 3) == (2,)
    assert galois.ddf_degrees(poly(1, 0, -1), 3) == (1, 1)
    assert galois.ddf_degrees(poly(1, 0, 1, 1), 2) == (3,)
    assert galois.ddf_degrees(poly(1, 0, 0, 0, 1), 3) == (2, 2)
    assert galois.ddf_degrees(poly(1, -1, -1), 5) == SquarefreeFailure(5)
    with pytest.raises(InputError):
        galois.ddf_degrees(poly(3, 0, 1), 3)


def test_prime_stream():
    assert galois.prime_stream(5, 4) == [5, 7, 11, 13]
    assert galois.prime_stream(4, 2) == [5, 7]


def test_certify_low_degrees():
    verdict = galois.certify_maeda(poly(1, 24))
    assert verdict.status is VerdictStatus.CERTIFIED

    verdict = galois.certify_maeda(poly(1, -1, -1))
    assert verdict.certified
    assert verdict.witnesses == [(7, (2,))]

    verdict = galois.certify_maeda(poly(1, 0, -1, -1))
    assert verdict.certified
    assert verdict.discriminant == -23


def test_certify_quartic():
    verdict = galois.certify_maeda(poly(1, 0, 0, -1, -1))
    assert verdict.certified
    assert verdict.degree == 4
    assert any(pattern == (4,) for _, pattern in verdict.witnesses)


def test_long_prime_cycles_have_no_upper_bound():
    assert galois._has_large_prime_cycle((5,), 5)
    assert galois._has_large_prime_cycle((3, 1, 1), 5)
    assert galois._has_large_prime_cycle((7, 1), 8)
    assert not galois._has_large_prime_cycle((2, 2, 1), 5)
    assert not galois._has_large_prime_cycle((3, 3), 6)
    assert not galois._has_large_prime_cycle((4, 1), 5)


def test_certify_quintic():
    verdict = galois.certify_maeda(poly(1, 0, 0, 0, -1, -1))
    assert verdict.certified
    assert verdict.degree == 5
    assert verdict.discriminant is None


def test_refutations():
    verdict = galois.certify_maeda(poly(1, 0, -1), prime_budget=20)
    assert verdict.status is VerdictStatus.REFUTED
    assert verdict.reason == "rational root -1"

    verdict = galois.certify_maeda(poly(1, 0, -3, 1))
    assert verdict.status is VerdictStatus.REFUTED
    assert verdict.discriminant == 81


def test_inconclusive():
    verdict = galois.certify_maeda(poly(1, 0, 0, 0, 1), prime_budget=20)
    assert verdict.status is VerdictStatus.INCONCLUSIVE
    assert verdict.budget_used == 20


def test_certify_rejects_non_monic():
    with pytest.raises(InputError):
        galois.certify_maeda(poly(2, 0, 1))


def test_verdict_needs_witness():
    with pytest.raises(InputError):
        Verdict(VerdictStatus.CERTIFIED, 3)
    assert Verdict(VerdictStatus.INCONCLUSIVE, 3).to_dict()["status"] == "Inconclusive"


def test_t2_certification_small_weights():
    report = galois.t2_crosscheck(3, prime_budget=200)
    assert report.passed
    assert report.details["2"]["status"] == "Certified"


@pytest.mark.slow
def test_t2_certification_up_to_weight_180():
    report = galois.t2_crosscheck(15, jobs=2)
    assert report.passed, report.failures
