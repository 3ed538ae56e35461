"""
Tests for truncated q-series arithmetic over Z, Q and Z/M
"""
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from fractions import Fraction

import numpy as np
import pytest

from heckelab.exceptions import DivisibilityError, InputError, PrecisionError, RingMismatchError
from heckelab.models.qseries import CoeffRing, QSeries, RingKind

ZZ = CoeffRing.integers()
QQ = CoeffRing.rationals()


def _naive_product(a, b):
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def test_ring_construction():
    assert CoeffRing.mod(16).modulus == 16
    assert CoeffRing.from_modulus(0) == ZZ
    assert str(CoeffRing.mod(3)) == "Z/3"
    assert str(QQ) == "QQ"
    with pytest.raises(InputError):
        CoeffRing.mod(1)
    with pytest.raises(InputError):
        CoeffRing(RingKind.BIG_INT, 5)


def test_ring_elements():
    assert CoeffRing.mod(8).element(-3) == 5
    assert CoeffRing.mod(7).element(Fraction(1, 2)) == 4
    assert QQ.element(3) == Fraction(3)
    with pytest.raises(InputError):
        ZZ.element(Fraction(1, 2))
    with pytest.raises(InputError):
        CoeffRing.mod(4).element(Fraction(1, 2))


def test_exact_multiplication_matches_schoolbook():
    a = [1, -24, 252, -1472, 4830, -6048, -16744]
    b = [3, 0, -5, 7, 11, -13, 2]
    product = QSeries(ZZ, a) * QSeries(ZZ, b)
    assert product.to_list() == _naive_product(a, b)


def test_big_integer_coefficients_stay_exact():
    big = 10 ** 30
    product = QSeries(ZZ, [big, big]) * QSeries(ZZ, [big, -big])
    assert product.to_list() == [big * big, 0]


def test_residue_multiplication_reduces():
    a = [1, 5, 7, 2, 9, 4]
    b = [2, 3, 8, 1, 0, 6]
    ring = CoeffRing.mod(11)
    product = QSeries(ring, a) * QSeries(ring, b)
    assert product.to_list() == [c % 11 for c in _naive_product(a, b)]
    assert product.coeffs.dtype == np.int64


def test_large_modulus_uses_exact_storage():
    ring = CoeffRing.mod(2 ** 61 - 1)
    a = QSeries(ring, [2 ** 60, 3])
    assert (a * a).to_list() == [pow(2, 120, 2 ** 61 - 1), (2 * 3 * 2 ** 60) % (2 ** 61 - 1)]


def test_precision_is_the_minimum():
    a = QSeries(ZZ, [1, 2, 3, 4])
    b = QSeries(ZZ, [1, 1])
    assert (a + b).precision == 2
    assert (a * b).to_list() == [1, 3]


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        QSeries(ZZ, [1]) + QSeries(CoeffRing.mod(3), [1])


def test_power_and_zero_power():
    x = QSeries(ZZ, [1, 1, 0, 0, 0])
    assert (x ** 4).to_list() == [1, 4, 6, 4, 1]
    assert (x ** 0).to_list() == [1, 0, 0, 0, 0]


def test_truncate_valuation_and_indexing():
    series = QSeries(ZZ, [0, 0, 5, 1])
    assert series.valuation() == 2
    assert QSeries.zero(ZZ, 3).is_zero()
    assert series.truncate(3).to_list() == [0, 0, 5]
    with pytest.raises(PrecisionError):
        series[4]
    with pytest.raises(PrecisionError):
        series.truncate(5)


def test_divide_exact():
    series = QSeries(ZZ, [0, 1728, -3456])
    assert series.divide_exact(1728).to_list() == [0, 1, -2]
    with pytest.raises(DivisibilityError) as excinfo:
        QSeries(ZZ, [2, 4, 5]).divide_exact(2)
    assert excinfo.value.index == 2


def test_change_ring():
    series = QSeries(ZZ, [-1, 17, 3])
    assert series.reduce_mod(8).to_list() == [7, 1, 3]
    assert series.reduce_mod(16).change_ring(CoeffRing.mod(4)).to_list() == [3, 1, 3]
    with pytest.raises(InputError):
        series.reduce_mod(8).change_ring(CoeffRing.mod(3))
    halves = QSeries(QQ, [Fraction(1, 2), 1])
    assert halves.change_ring(CoeffRing.mod(5)).to_list() == [3, 1]


def test_series_is_immutable():
    series = QSeries(ZZ, [1, 2, 3])
    with pytest.raises(ValueError):
        series.coeffs[0] = 5


def test_monomial():
    assert QSeries.monomial(ZZ, 4, 2, 7).to_list() == [0, 0, 7, 0]
    assert QSeries.monomial(ZZ, 2, 5).is_zero()


def _random_series(rng, ring, precision):
    bound = ring.modulus if ring.is_residue else 10 ** 12
    return QSeries(ring, [int(c) for c in rng.integers(-bound, bound, size=precision)])


RINGS = [ZZ, CoeffRing.mod(16), CoeffRing.mod(691), CoeffRing.mod(2 ** 61 - 1)]


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_ring_axioms(ring):
    rng = np.random.default_rng(7)
    for _ in range(10):
        a, b, c = (_random_series(rng, ring, 24) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a + b) - b == a
        product = QSeries.one(ring, 24)
        for exponent in range(6):
            assert a ** exponent == product
            product = product * a


@pytest.mark.parametrize("ring", RINGS, ids=str)
def test_truncation_commutes_with_products(ring):
    rng = np.random.default_rng(11)
    a, b = _random_series(rng, ring, 40), _random_series(rng, ring, 40)
    for precision in (1, 7, 25, 40):
        assert (a * b).truncate(precision) == a.truncate(precision) * b.truncate(precision)
    assert (a * b.truncate(13)).precision == 13


def test_reduction_is_a_ring_homomorphism():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a, b = _random_series(rng, ZZ, 30), _random_series(rng, ZZ, 30)
        for modulus in (3, 8, 16, 691):
            assert (a + b).reduce_mod(modulus) == a.reduce_mod(modulus) + b.reduce_mod(modulus)
            assert (a * b).reduce_mod(modulus) == a.reduce_mod(modulus) * b.reduce_mod(modulus)
            assert (a ** 3).reduce_mod(modulus) == a.reduce_mod(modulus) ** 3
