"""
Computations: arithmetic functions, modular forms, Hecke operators, subgroup
counts, Galois certification and the Maeda scans.
"""

from .arith import (PrimeSieve, configure_sieve, dedekind_psi, divisors, euler_phi, factorize,
                    sigma_k, sigma_mod2_class, sigma_nonzero_mod3)
from .modforms import basis_b, c4, c6, decompose, delta, delta_power, reassemble, tau
from .hecke import b_coefficient, composition_check, eigenvalue, hecke_apply
from .subgroups import c_formula, c_polynomial_identity, census_identities, enumerate_subgroups
from .galois import certify_maeda, char_poly, hecke_matrix
from .maeda import (cond1_p2, cond1_p3, cond2, maeda_certificate, ramanujan_scan, scan_cond1_p2,
                    scan_cond1_p3, thmE_scan)

__all__ = [
    "PrimeSieve", "configure_sieve", "dedekind_psi", "divisors", "euler_phi", "factorize",
    "sigma_k", "sigma_mod2_class", "sigma_nonzero_mod3",
    "basis_b", "c4", "c6", "decompose", "delta", "delta_power", "reassemble", "tau",
    "b_coefficient", "composition_check", "eigenvalue", "hecke_apply",
    "c_formula", "c_polynomial_identity", "census_identities", "enumerate_subgroups",
    "certify_maeda", "char_poly", "hecke_matrix",
    "cond1_p2", "cond1_p3", "cond2", "maeda_certificate", "ramanujan_scan", "scan_cond1_p2",
    "scan_cond1_p3", "thmE_scan",
]
