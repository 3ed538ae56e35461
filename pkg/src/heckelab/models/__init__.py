"""
Value types used throughout heckelab.
"""

from .factored import FactoredInt, SigmaMod2Class
from .qseries import CoeffRing, QSeries, RingKind
from .modular_form import BasisDecomposition, ModularForm
from .abelian import AbelianType, SubgroupRecord
from .polynomial import IntPolynomial
from .reports import CheckReport, CongruenceReport
from .certificates import (ChainLink, Condition1Result, MaedaCertificate, SquarefreeFailure,
                           Verdict, VerdictStatus)

__all__ = [
    "FactoredInt", "SigmaMod2Class",
    "CoeffRing", "QSeries", "RingKind",
    "BasisDecomposition", "ModularForm",
    "AbelianType", "SubgroupRecord",
    "IntPolynomial",
    "CheckReport", "CongruenceReport",
    "ChainLink", "Condition1Result", "MaedaCertificate", "SquarefreeFailure",
    "Verdict", "VerdictStatus",
]
