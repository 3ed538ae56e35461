"""
Factored integers and the residue class of sigma(n) modulo powers of 2.
"""

from dataclasses import dataclass
from typing import Dict, Tuple
import logging

from ..exceptions import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FactoredInt:
    """
    A positive integer together with its prime factorization.

    Attributes:
        value: The integer n >= 1
        factors: Pairs (p, a) with primes strictly increasing and a >= 1
    """

    value: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        """Check that the factorization is canonical and multiplies out to value."""
        if self.value < 1:
            raise InputError(f"FactoredInt requires a positive value, got {self.value}")

        product = 1
        previous = 1
        for prime, exponent in self.factors:
            if prime <= previous:
                raise InputError("Prime factors must be strictly increasing")
            if exponent < 1:
                raise InputError(f"Exponent of {prime} must be positive")
            product *= prime ** exponent
            previous = prime

        if product != self.value:
            raise InputError(f"Factorization {self.factors} does not multiply to {self.value}")

    def __int__(self) -> int:
        return self.value

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, prime: int) -> int:
        """Exponent of ``prime`` in n (0 when it does not divide n)."""
        return dict(self.factors).get(prime, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.factors)

    @property
    def is_square(self) -> bool:
        return all(exponent % 2 == 0 for _, exponent in self.factors)

    @property
    def odd_part_factors(self) -> Tuple[Tuple[int, int], ...]:
        """Prime powers appearing to an odd exponent."""
        return tuple((p, a) for p, a in self.factors if a % 2 == 1)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


@dataclass(frozen=True)
class SigmaMod2Class:
    """
    Which of 2, 4, 8 fail to divide sigma(n) for an odd n.

    Attributes:
        nonzero_mod2: sigma(n) is odd
        nonzero_mod4: sigma(n) is not divisible by 4
        nonzero_mod8: sigma(n) is not divisible by 8
    """

    nonzero_mod2: bool
    nonzero_mod4: bool
    nonzero_mod8: bool

    def __post_init__(self):
        if self.nonzero_mod2 and not self.nonzero_mod4:
            raise InputError("A value nonzero mod 2 is nonzero mod 4")
        if self.nonzero_mod4 and not self.nonzero_mod8:
            raise InputError("A value nonzero mod 4 is nonzero mod 8")

    def nonzero_mod_power(self, exponent: int) -> bool:
        """Whether sigma(n) is nonzero modulo 2**exponent (exponent 1..3; larger reads as 3)."""
        if exponent < 1:
            raise InputError(f"Exponent must be at least 1, got {exponent}")
        if exponent == 1:
            return self.nonzero_mod2
        if exponent == 2:
            return self.nonzero_mod4
        return self.nonzero_mod8
