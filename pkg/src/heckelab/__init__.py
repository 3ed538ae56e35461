"""
heckelab

Exact q-expansion arithmetic for level-one modular forms: Hecke operators, the
Ramanujan and b_n^e congruences, subgroup counts in products of two cyclic
groups, and Maeda-conjecture scans and certificates.
"""

from .models import CoeffRing, FactoredInt, IntPolynomial, ModularForm, QSeries
from .data_providers import CoefficientCache, DeltaPowerProvider
from .calculators import (certify_maeda, char_poly, factorize, hecke_apply, hecke_matrix,
                          maeda_certificate, tau)
from .reports import ReportGenerator

__version__ = "1.0.0"

__all__ = [
    "CoeffRing",
    "FactoredInt",
    "IntPolynomial",
    "ModularForm",
    "QSeries",
    "CoefficientCache",
    "DeltaPowerProvider",
    "certify_maeda",
    "char_poly",
    "factorize",
    "hecke_apply",
    "hecke_matrix",
    "maeda_certificate",
    "tau",
    "ReportGenerator",
]
