"""
Classical Hecke operators on level-one q-expansions.

a_m(T_n f) = sum over e | gcd(m, n) of e^(k-1) * a_(mn/e^2)(f), with gcd(0, n) = n.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence
import logging
import time

import numpy as np

from ..exceptions import InputError, PrecisionError, ProportionalityError, ResourceLimitError
from ..models.modular_form import ModularForm
from ..models.qseries import CoeffRing, QSeries, RingKind, Scalar
from ..models.reports import CheckReport
from ..data_providers.delta_provider import DeltaPowerProvider, default_provider
from .arith import divisors
from .modforms import ADAMS_CONVENTION, adams_scale, basis_b, decompose, delta_power

logger = logging.getLogger(__name__)

DEFAULT_COEFFICIENT_BUDGET = 2_000_000
NORMALIZATIONS = ("classical", "stable")


@dataclass(frozen=True)
class HeckeParams:
    """
    Index and weight of a classical Hecke operator.

    Attributes:
        n: Operator index, n >= 1
        weight: Even weight k >= 0
    """

    n: int
    weight: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"Hecke index must be positive, got {self.n}")
        if self.weight < 0 or self.weight % 2:
            raise InputError(f"Weight must be even and nonnegative, got {self.weight}")

    def check_ring(self, ring: CoeffRing) -> None:
        if self.weight == 0 and ring.kind is not RingKind.BIG_RATIONAL:
            raise InputError("Weight-0 Hecke operators need rational coefficients (T_n(1) = sigma(n)/n)")

    def divisor_weight(self, e: int, ring: CoeffRing) -> Scalar:
        """e^(k-1) in the ring; 1/e at weight 0."""
        if self.weight == 0:
            return Fraction(1, e)
        if ring.is_residue:
            return pow(e, self.weight - 1, ring.modulus)
        return e ** (self.weight - 1)

    def required_precision(self, output_precision: int) -> int:
        """Input coefficients read when producing ``output_precision`` coefficients."""
        return self.n * (output_precision - 1) + 1


def hecke_apply(f: ModularForm, n: int, precision: int) -> ModularForm:
    """
    Apply T_n to a form.

    Args:
        f: Form of weight k; weight 0 requires rational coefficients
        n: Operator index
        precision: Output precision N; f must know coefficients up to q^(n(N-1))

    Returns:
        T_n f to precision N, same weight and ring
    """
    params = HeckeParams(n, f.weight)
    params.check_ring(f.ring)
    if precision < 1:
        raise InputError(f"Output precision must be positive, got {precision}")
    required = params.required_precision(precision)
    if f.precision < required:
        raise PrecisionError(f"T_{n} to precision {precision}", required, f.precision)

    source = f.series.coeffs.astype(object)
    out = np.zeros(precision, dtype=object)
    for e in divisors(n):
        weight = params.divisor_weight(e, f.ring)
        stride = n // e
        count = (precision - 1) // e + 1
        # m = e*j contributes e^(k-1) * a_(j*n/e)
        out[0:precision:e] += weight * source[0:(count - 1) * stride + 1:stride]
    return ModularForm(f.weight, QSeries(f.ring, out))


def stable_normalize(value: Scalar, n: int) -> Scalar:
    """Convert a classical Hecke value to the stable normalization n * T_n."""
    return value * n


def _stable_apply(f: ModularForm, n: int, precision: int) -> ModularForm:
    return hecke_apply(f, n, precision).scale(n)


def _basis_labels(d: int) -> List[str]:
    labels = []
    for i in range(d, -1, -1):
        parts = []
        if d - i:
            parts.append(f"c4^{3 * (d - i)}")
        if i:
            parts.append(f"Delta^{i}" if i > 1 else "Delta")
        labels.append("*".join(parts) or "1")
    return labels


def composition_check(m: int, n: int, k: int, precision: int,
                      normalization: str = "classical",
                      basis: Optional[Sequence[ModularForm]] = None,
                      provider: Optional[DeltaPowerProvider] = None) -> CheckReport:
    """
    Verify T_m T_n = sum over d | gcd(m, n) of d^(k-1) T_(mn/d^2) on every basis form.

    With normalization='stable' the operators are n * T_n and the identity reads
    T_m T_n = sum d * psi^d * T_(mn/d^2), where psi^d multiplies by d^k.

    Args:
        m, n: Operator indices
        k: Weight, a positive multiple of 12
        precision: Precision at which both sides are compared
        normalization: 'classical' or 'stable'
        basis: Optional precomputed basis_b(k/12, N) with N >= mn(precision-1)+1
        provider: Source of Delta powers

    Returns:
        CheckReport listing every mismatching coefficient
    """
    started = time.perf_counter()
    if k < 12 or k % 12:
        raise InputError(f"Composition checks run on weights divisible by 12, got {k}")
    if normalization not in NORMALIZATIONS:
        raise InputError(f"Unknown normalization {normalization!r}")
    if m < 1 or n < 1:
        raise InputError("Hecke indices must be positive")

    d_weight = k // 12
    needed = m * n * (precision - 1) + 1
    if basis is None:
        basis = basis_b(d_weight, needed, provider=provider)
    forms = [form.truncate(needed) for form in basis]

    report = CheckReport(family="hecke-composition",
                         params={"m": m, "n": n, "k": k, "precision": precision},
                         mode=normalization)
    apply = _stable_apply if normalization == "stable" else hecke_apply

    for label, form in zip(_basis_labels(d_weight), forms):
        inner = apply(form, n, m * (precision - 1) + 1)
        lhs = apply(inner, m, precision)

        rhs = QSeries.zero(form.ring, precision)
        for d in divisors(gcd(m, n)):
            term = apply(form, m * n // (d * d), precision)
            if normalization == "stable":
                term = adams_scale(term, d).scale(d)
            else:
                term = term.scale(d ** (k - 1))
            rhs = rhs + term.series

        for index in range(precision):
            report.checked += 1
            if lhs[index] != rhs[index]:
                report.record_failure(form=label, index=index, lhs=lhs[index], rhs=rhs[index])

    report.runtime_ms = (time.perf_counter() - started) * 1000
    if not report.passed:
        logger.warning(f"Composition identity failed for m={m}, n={n}, k={k}: "
                       f"{len(report.failures)} mismatches")
    return report


def eigenvalue(f: ModularForm, n: int) -> Scalar:
    """
    The eigenvalue of T_n on f, verified on every coefficient T_n f determines.

    Raises:
        InputError: f is zero to its known precision
        ProportionalityError: T_n f is not a multiple of f
    """
    leading = f.series.valuation()
    if leading is None:
        raise InputError("The zero form has no eigenvalue")

    output_precision = (f.precision - 1) // n + 1
    if output_precision < leading + 1:
        raise PrecisionError(f"Eigenvalue of T_{n}", n * leading + 1, f.precision)

    image = hecke_apply(f, n, output_precision)
    a, b = f[leading], image[leading]
    ring = f.ring
    if ring.kind is RingKind.BIG_INT:
        if b % a:
            raise ProportionalityError(f"T_{n} f is not an integer multiple of f", leading)
        value = b // a
    elif ring.kind is RingKind.BIG_RATIONAL:
        value = Fraction(b) / Fraction(a)
    else:
        try:
            value = (b * pow(a, -1, ring.modulus)) % ring.modulus
        except ValueError:
            raise InputError(f"Leading coefficient {a} is not a unit modulo {ring.modulus}")

    expected = f.series.truncate(output_precision).scale(value)
    for index in range(output_precision):
        if image[index] != expected[index]:
            raise ProportionalityError(f"f is not an eigenform of T_{n}", index)
    return value


def b_coefficient(n: int, e: int, modulus: int = 0,
                  provider: Optional[DeltaPowerProvider] = None,
                  basis: Optional[Sequence[ModularForm]] = None,
                  budget: int = DEFAULT_COEFFICIENT_BUDGET) -> Scalar:
    """
    The Delta^e coordinate b_n^e of T_n(Delta^e) in the basis of weight 12e.

    Args:
        n: Operator index
        e: Power of Delta, e >= 1
        modulus: 0 for the exact integer, otherwise the residue modulo it
        provider: Source of Delta powers
        basis: Optional precomputed basis_b(e, N, ring) with N >= e + 1
        budget: Coefficients the computation may touch

    Returns:
        b_n^e as an int (a residue in [0, modulus) when modulus > 0)
    """
    if n < 1 or e < 1:
        raise InputError(f"b_n^e needs n, e >= 1, got n={n}, e={e}")
    precision = n * e + 1
    touched = precision * e
    if touched > budget:
        raise ResourceLimitError(f"b_{n}^{e} touches {touched} coefficients, budget is {budget}")

    ring = CoeffRing.from_modulus(modulus)
    form = delta_power(e, precision, ring, provider)
    image = hecke_apply(form, n, e + 1)
    return decompose(image, e, basis).delta_coefficient


def prime_power_recursion_check(f: ModularForm, p: int, r: int, precision: int) -> CheckReport:
    """
    Check T_(p^(r+1)) f = T_p T_(p^r) f - p^(k-1) T_(p^(r-1)) f.

    Args:
        f: Form of weight k with precision at least p^(r+1) (precision-1) + 1
        p: A prime
        r: Exponent, r >= 1
        precision: Precision of the comparison
    """
    k = f.weight
    lhs = hecke_apply(f, p ** (r + 1), precision)
    inner = hecke_apply(f, p ** r, p * (precision - 1) + 1)
    first = hecke_apply(inner, p, precision)
    second = hecke_apply(f, p ** (r - 1), precision).scale(p ** (k - 1))
    rhs = first - second

    report = CheckReport(family="hecke-prime-power", params={"p": p, "r": r, "weight": k,
                                                             "precision": precision})
    for index in range(precision):
        report.checked += 1
        if lhs[index] != rhs[index]:
            report.record_failure(index=index, lhs=lhs[index], rhs=rhs[index])
    return report


def adams_commutation_check(f: ModularForm, n: int, k: int, precision: int) -> CheckReport:
    """Check T_n psi^k = psi^k T_n on f."""
    lhs = hecke_apply(adams_scale(f, k), n, precision)
    rhs = adams_scale(hecke_apply(f, n, precision), k)
    report = CheckReport(family="hecke-adams-commutation",
                         params={"n": n, "k": k, "weight": f.weight, "precision": precision},
                         mode=ADAMS_CONVENTION)
    for index in range(precision):
        report.checked += 1
        if lhs[index] != rhs[index]:
            report.record_failure(index=index, lhs=lhs[index], rhs=rhs[index])
    return report


def hecke_matrix_columns(n: int, d: int, provider: Optional[DeltaPowerProvider] = None,
                         budget: int = DEFAULT_COEFFICIENT_BUDGET) -> Dict[str, List[int]]:
    """Decomposition of T_n applied to each cusp basis form, keyed by the form's label."""
    precision = n * d + 1
    touched = precision * (d + 1)
    if touched > budget:
        raise ResourceLimitError(f"T_{n} on S_{12 * d} touches {touched} coefficients, budget is {budget}")

    basis = basis_b(d, precision, provider=provider)
    short_basis = [form.truncate(d + 1) for form in basis]
    columns: Dict[str, List[int]] = {}
    for label, form in zip(_basis_labels(d)[:d], basis[:d]):
        decomposition = decompose(hecke_apply(form, n, d + 1), d, short_basis)
        if not decomposition.is_cuspidal:
            raise InputError(f"T_{n} of the cusp form {label} has a constant term")
        columns[label] = [decomposition.coefficients[i] for i in range(d, 0, -1)]
    return columns
