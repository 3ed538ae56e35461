"""
Elementary arithmetic: factorization, divisor functions and the residue
classes of sigma(n) that drive the congruence conditions.
"""

from functools import lru_cache
from math import isqrt, prod
from typing import List, Union
import logging

import numpy as np

from ..exceptions import InputError, ResourceLimitError
from ..models.factored import FactoredInt, SigmaMod2Class

logger = logging.getLogger(__name__)

DEFAULT_SIEVE_BOUND = 1_000_000

IntLike = Union[int, FactoredInt]


class PrimeSieve:
    """
    Smallest-prime-factor table up to a bound.

    Integers up to ``bound`` factor by table lookup; integers up to ``bound**2``
    by trial division with the sieved primes first.
    """

    def __init__(self, bound: int = DEFAULT_SIEVE_BOUND):
        if bound < 2:
            raise InputError(f"Sieve bound must be at least 2, got {bound}")
        self.bound = bound

        spf = np.zeros(bound + 1, dtype=np.int64)
        for p in range(2, isqrt(bound) + 1):
            if spf[p] == 0:
                multiples = spf[p * p::p]
                multiples[multiples == 0] = p
        primes = np.flatnonzero(spf[2:] == 0) + 2
        spf[primes] = primes

        self._spf = spf
        self.primes: List[int] = primes.tolist()
        logger.debug(f"Sieved {len(self.primes)} primes up to {bound}")

    def factorize(self, n: int) -> FactoredInt:
        """
        Factor a positive integer.

        Args:
            n: Integer with 1 <= n <= bound**2

        Returns:
            FactoredInt with increasing primes
        """
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            raise InputError(f"Cannot factor {n!r}")
        n = int(n)
        if n < 1:
            raise InputError(f"Only positive integers factor, got {n}")
        if n > self.bound ** 2:
            raise ResourceLimitError(f"{n} exceeds the factorization limit {self.bound ** 2}")

        exponents = {}
        remaining = n
        if remaining > self.bound:
            for p in self.primes:
                if p * p > remaining or remaining <= self.bound:
                    break
                while remaining % p == 0:
                    exponents[p] = exponents.get(p, 0) + 1
                    remaining //= p
            if remaining > self.bound:
                exponents[remaining] = exponents.get(remaining, 0) + 1
                remaining = 1

        while remaining > 1:
            p = int(self._spf[remaining])
            exponents[p] = exponents.get(p, 0) + 1
            remaining //= p

        return FactoredInt(n, tuple(sorted(exponents.items())))


@lru_cache(maxsize=4)
def get_sieve(bound: int = DEFAULT_SIEVE_BOUND) -> PrimeSieve:
    return PrimeSieve(bound)


_sieve_bound = DEFAULT_SIEVE_BOUND


def configure_sieve(bound: int) -> None:
    """Set the sieve bound used by :func:`factorize` when no sieve is passed."""
    global _sieve_bound
    if bound < 2:
        raise InputError(f"Sieve bound must be at least 2, got {bound}")
    _sieve_bound = bound


def factorize(n: int, sieve: PrimeSieve = None) -> FactoredInt:
    return (sieve or get_sieve(_sieve_bound)).factorize(n)


def _factored(n: IntLike) -> FactoredInt:
    return n if isinstance(n, FactoredInt) else factorize(n)


def divisors(n: IntLike) -> List[int]:
    """Positive divisors of n in increasing order."""
    result = [1]
    for p, a in _factored(n).factors:
        result = [d * p ** j for d in result for j in range(a + 1)]
    return sorted(result)


def sigma_k(n: IntLike, k: int = 1) -> int:
    """
    Divisor power sum sigma_k(n) = sum of d**k over the divisors d of n.

    Args:
        n: Positive integer or its factorization
        k: Nonnegative exponent

    Returns:
        sigma_k(n)
    """
    if k < 0:
        raise InputError(f"sigma_k needs k >= 0, got {k}")
    factored = _factored(n)
    if k == 0:
        return prod(a + 1 for _, a in factored.factors)
    return prod((p ** (k * (a + 1)) - 1) // (p ** k - 1) for p, a in factored.factors)


def euler_phi(n: IntLike) -> int:
    return prod(p ** (a - 1) * (p - 1) for p, a in _factored(n).factors)


def dedekind_psi(n: IntLike) -> int:
    """psi(n) = n * prod over p | n of (1 + 1/p)."""
    return prod(p ** (a - 1) * (p + 1) for p, a in _factored(n).factors)


def valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise InputError("The valuation of 0 is infinite")
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def sigma_nonzero_mod3(n: IntLike) -> bool:
    """
    Whether 3 does not divide sigma(n), from the factorization alone.

    A prime power l^e with l = 1 (mod 3) needs e = 0, 1, 3, 4 (mod 6); with
    l = 2 (mod 3) it needs e even.
    """
    factored = _factored(n)
    if factored.value % 3 == 0:
        raise InputError(f"sigma(n) mod 3 is classified for 3 not dividing n, got {factored.value}")
    for p, a in factored.factors:
        if p % 3 == 1 and a % 6 not in (0, 1, 3, 4):
            return False
        if p % 3 == 2 and a % 2:
            return False
    return True


def sigma_mod2_class(n: IntLike) -> SigmaMod2Class:
    """
    Classify sigma(n) modulo 2, 4 and 8 for odd n from the factorization.

    Only prime powers with odd exponent contribute a factor of 2: sigma(l^e)
    then has 2-adic valuation v(l + 1) + v((e + 1) / 2).

    Args:
        n: Odd positive integer or its factorization

    Returns:
        SigmaMod2Class
    """
    factored = _factored(n)
    if factored.value % 2 == 0:
        raise InputError(f"sigma(n) mod 2^k is classified for odd n, got {factored.value}")

    odd = factored.odd_part_factors
    nonzero_mod2 = not odd
    nonzero_mod4 = nonzero_mod2 or (
        len(odd) == 1 and odd[0][0] % 4 == 1 and odd[0][1] % 4 == 1)

    two_simple = len(odd) <= 2 and all(p % 4 == 1 and a % 4 == 1 for p, a in odd)
    one_double = len(odd) == 1 and (
        (odd[0][1] % 4 == 1 and odd[0][0] % 8 == 3)
        or (odd[0][1] % 8 == 3 and odd[0][0] % 4 == 1))
    nonzero_mod8 = two_simple or one_double

    return SigmaMod2Class(nonzero_mod2, nonzero_mod4, nonzero_mod8)


def divisor_sum_table(k: int, size: int, modulus: int = 0) -> np.ndarray:
    """
    sigma_k(m) for m = 0 .. size-1 (entry 0 is 0), optionally reduced.

    Returns an object array of exact integers, or int64 residues when modulus > 0.
    """
    if size < 1:
        raise InputError(f"Table size must be positive, got {size}")
    if modulus:
        table = np.zeros(size, dtype=np.int64)
        for d in range(1, size):
            table[d::d] = (table[d::d] + pow(d, k, modulus)) % modulus
    else:
        table = np.zeros(size, dtype=object)
        for d in range(1, size):
            table[d::d] += d ** k
    return table
