"""
Level-one modular forms: Delta, the Eisenstein series c4 and c6, the basis
c4^(3(d-i)) * Delta^i of weight 12d, and the Adams operations on q-expansions.
"""

from fractions import Fraction
from typing import List, Optional, Sequence
import logging

import numpy as np
from sympy import bernoulli

from ..exceptions import InputError, PrecisionError
from ..models.modular_form import BasisDecomposition, ModularForm
from ..models.qseries import CoeffRing, QSeries
from ..models.reports import CheckReport
from ..data_providers.delta_provider import DeltaPowerProvider, default_provider
from .arith import divisor_sum_table

logger = logging.getLogger(__name__)

# psi^k multiplies a form by k raised to its weight
ADAMS_CONVENTION = "k^weight"


def eta_cubed_series(precision: int, ring: Optional[CoeffRing] = None) -> QSeries:
    """prod_{n>=1} (1 - q^n)^3 = sum_{k>=0} (-1)^k (2k+1) q^(k(k+1)/2), by Jacobi's identity."""
    ring = ring or CoeffRing.integers()
    coefficients = np.zeros(precision, dtype=object)
    k = 0
    while k * (k + 1) // 2 < precision:
        coefficients[k * (k + 1) // 2] = (-1) ** k * (2 * k + 1)
        k += 1
    return QSeries(ring, coefficients)


def delta_series(precision: int, ring: Optional[CoeffRing] = None) -> QSeries:
    """
    q-expansion of Delta = q * prod (1 - q^n)^24.

    The eta-product is built as eight factors of the sparse cube from
    :func:`eta_cubed_series`, so every product has a sparse operand.

    Args:
        precision: Number of coefficients
        ring: Coefficient ring (default exact integers)

    Returns:
        QSeries of Delta
    """
    ring = ring or CoeffRing.integers()
    if precision < 1:
        raise InputError(f"Precision must be positive, got {precision}")
    if precision == 1:
        return QSeries.zero(ring, 1)

    cube = eta_cubed_series(precision - 1, ring)
    product = cube
    for _ in range(7):
        product = product * cube
    return QSeries(ring, [0, *product.coeffs])


def delta(precision: int, ring: Optional[CoeffRing] = None,
          provider: Optional[DeltaPowerProvider] = None) -> ModularForm:
    """The discriminant form Delta (weight 12)."""
    provider = provider or default_provider()
    return ModularForm(12, provider.power(1, precision, ring or CoeffRing.integers()))


def delta_power(i: int, precision: int, ring: Optional[CoeffRing] = None,
                provider: Optional[DeltaPowerProvider] = None) -> ModularForm:
    """Delta^i (weight 12i), served by the provider's incremental table."""
    if i < 0:
        raise InputError(f"Delta powers need i >= 0, got {i}")
    provider = provider or default_provider()
    return ModularForm(12 * i, provider.power(i, precision, ring or CoeffRing.integers()))


def tau(n: int, provider: Optional[DeltaPowerProvider] = None) -> int:
    """Ramanujan's tau(n), the coefficient of q^n in Delta."""
    return (provider or default_provider()).tau(n)


def eisenstein_series(weight: int, precision: int, ring: Optional[CoeffRing] = None) -> ModularForm:
    """
    Normalized Eisenstein series E_k = 1 - (2k / B_k) * sum sigma_{k-1}(n) q^n.

    Args:
        weight: Even weight k >= 4
        precision: Number of coefficients
        ring: Coefficient ring; the constant -2k/B_k must lie in it (it is
            integral for k = 4, 6, 8, 10, 14)

    Returns:
        ModularForm of weight k
    """
    if weight < 4 or weight % 2:
        raise InputError(f"Eisenstein series need an even weight >= 4, got {weight}")
    ring = ring or CoeffRing.integers()
    b_k = bernoulli(weight)
    constant = Fraction(-2 * weight) / Fraction(int(b_k.p), int(b_k.q))

    sums = divisor_sum_table(weight - 1, precision)
    coefficients = [Fraction(1)] + [constant * s for s in sums[1:]]
    return ModularForm(weight, QSeries(ring, coefficients))


def c4(precision: int, ring: Optional[CoeffRing] = None) -> ModularForm:
    """c4 = 1 + 240 * sum sigma_3(n) q^n."""
    return eisenstein_series(4, precision, ring)


def c6(precision: int, ring: Optional[CoeffRing] = None) -> ModularForm:
    """c6 = 1 - 504 * sum sigma_5(n) q^n."""
    return eisenstein_series(6, precision, ring)


def basis_b(d: int, precision: int, ring: Optional[CoeffRing] = None,
            provider: Optional[DeltaPowerProvider] = None) -> List[ModularForm]:
    """
    The basis [Delta^d, c4^3 Delta^(d-1), ..., c4^(3d)] of weight-12d forms.

    The element c4^(3(d-i)) Delta^i sits at list position d - i and has
    q-expansion q^i + O(q^(i+1)).

    Args:
        d: Weight index, d >= 0
        precision: Number of coefficients
        ring: Coefficient ring (default exact integers)
        provider: Source of Delta powers

    Returns:
        List of d + 1 forms of weight 12d
    """
    if d < 0:
        raise InputError(f"Basis index must be nonnegative, got {d}")
    ring = ring or CoeffRing.integers()
    provider = provider or default_provider()

    deltas = provider.powers(d, precision, ring)
    c4_cubed = c4(precision, ring).series ** 3

    by_delta_exponent: List[Optional[ModularForm]] = [None] * (d + 1)
    c4_part = QSeries.one(ring, precision)
    for i in range(d, -1, -1):
        by_delta_exponent[i] = ModularForm(12 * d, c4_part * deltas[i])
        if i:
            c4_part = c4_part * c4_cubed
    return [by_delta_exponent[i] for i in range(d, -1, -1)]


def _basis_at(basis: Sequence[ModularForm], d: int, precision: int) -> Sequence[ModularForm]:
    if len(basis) != d + 1:
        raise InputError(f"Basis for d = {d} needs {d + 1} forms, got {len(basis)}")
    if basis[0].precision < precision:
        raise PrecisionError("Basis is too short", precision, basis[0].precision)
    return basis


def decompose(f: ModularForm, d: int, basis: Optional[Sequence[ModularForm]] = None) -> BasisDecomposition:
    """
    Coordinates of a weight-12d form in :func:`basis_b`.

    Forward substitution on the unitriangular leading terms: the coordinate on
    c4^(3(d-i)) Delta^i is the q^i coefficient left after removing the lower ones.
    Leading coefficients are 1, so this works over residue rings as well.

    Args:
        f: Form of weight 12d with precision at least d + 1
        d: Weight index
        basis: Optional precomputed basis_b(d, N, f.ring) with N >= d + 1

    Returns:
        BasisDecomposition over f's ring
    """
    if f.weight != 12 * d:
        raise InputError(f"Expected weight {12 * d}, got {f.weight}")
    if f.precision < d + 1:
        raise PrecisionError(f"Decomposing weight {12 * d} needs d + 1 coefficients", d + 1, f.precision)

    basis = _basis_at(basis or basis_b(d, d + 1, f.ring), d, d + 1)

    residual = f.series.truncate(d + 1)
    coefficients = []
    for i in range(d + 1):
        c = residual[i]
        coefficients.append(c)
        if c:
            residual = residual - basis[d - i].series.truncate(d + 1).scale(c)
    return BasisDecomposition(d, tuple(coefficients), f.ring)


def reassemble(decomposition: BasisDecomposition, precision: int,
               basis: Optional[Sequence[ModularForm]] = None) -> ModularForm:
    """Sum of coefficients[i] * c4^(3(d-i)) Delta^i to the given precision."""
    d = decomposition.d
    basis = _basis_at(basis or basis_b(d, precision, decomposition.ring), d, precision)
    total = QSeries.zero(decomposition.ring, precision)
    for i, c in enumerate(decomposition.coefficients):
        if c:
            total = total + basis[d - i].series.truncate(precision).scale(c)
    return ModularForm(12 * d, total)


def adams_scale(f: ModularForm, k: int) -> ModularForm:
    """psi^k: multiply every coefficient by k^weight (so Delta maps to k^12 Delta)."""
    return f.scale(k ** f.weight)


def adams_compose_check(f: ModularForm, k: int, l: int) -> CheckReport:
    """
    Check psi^k psi^l = psi^(kl) and psi^(+-1) = id on f.

    Returns:
        CheckReport with one failure per mismatching coefficient
    """
    report = CheckReport(family="adams-composition", params={"k": k, "l": l, "weight": f.weight},
                         mode=ADAMS_CONVENTION)
    pairs = [
        ("psi^k psi^l", adams_scale(adams_scale(f, l), k), adams_scale(f, k * l)),
        ("psi^1", adams_scale(f, 1), f),
        ("psi^-1", adams_scale(f, -1), f),
    ]
    for relation, lhs, rhs in pairs:
        for index in range(f.precision):
            report.checked += 1
            if lhs[index] != rhs[index]:
                report.record_failure(relation=relation, index=index, lhs=lhs[index], rhs=rhs[index])
    return report
