"""
Finite abelian group types and subgroup records.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Tuple
import logging

from ..exceptions import InputError

logger = logging.getLogger(__name__)


def _prime_power_parts(value: int) -> Dict[int, int]:
    parts: Dict[int, int] = {}
    remaining = value
    candidate = 2
    while candidate * candidate <= remaining:
        while remaining % candidate == 0:
            parts[candidate] = parts.get(candidate, 0) + 1
            remaining //= candidate
        candidate += 1
    if remaining > 1:
        parts[remaining] = parts.get(remaining, 0) + 1
    return parts


def _assemble(exponents_by_prime: Mapping[int, List[int]]) -> Tuple[int, ...]:
    """Combine per-prime exponent lists (any order) into invariant factors d1 | d2 | ..."""
    rank = max((len(exps) for exps in exponents_by_prime.values()), default=0)
    largest_first = []
    for position in range(rank):
        factor = 1
        for prime, exps in exponents_by_prime.items():
            ordered = sorted(exps, reverse=True)
            if position < len(ordered):
                factor *= prime ** ordered[position]
        largest_first.append(factor)
    return tuple(reversed(largest_first))


@dataclass(frozen=True)
class AbelianType:
    """
    Isomorphism type of a finite abelian group in invariant-factor form.

    Attributes:
        invariant_factors: d1 | d2 | ... with every d_i > 1; the trivial group is ()
    """

    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        for d in factors:
            if d <= 1:
                raise InputError(f"Invariant factors must exceed 1, got {factors}")
        for smaller, larger in zip(factors, factors[1:]):
            if larger % smaller != 0:
                raise InputError(f"Invariant factors must form a divisor chain, got {factors}")

    @classmethod
    def from_cyclic_factors(cls, orders: Iterable[int]) -> "AbelianType":
        """Normal form of a product of cyclic groups of the given orders."""
        exponents: Dict[int, List[int]] = {}
        for order in orders:
            if order < 1:
                raise InputError(f"Cyclic factor orders must be positive, got {order}")
            for prime, exponent in _prime_power_parts(order).items():
                exponents.setdefault(prime, []).append(exponent)
        return cls(_assemble(exponents))

    @classmethod
    def cyclic(cls, order: int) -> "AbelianType":
        return cls.from_cyclic_factors([order])

    @classmethod
    def from_order_counts(cls, order_counts: Mapping[int, int]) -> "AbelianType":
        """
        Recover the type from how many elements have each order.

        The number of elements killed by p**j is the product of gcd(p**j, d_i), so the
        ratios of successive counts give, for every j, how many invariant factors are
        divisible by p**j. The largest factor is read off first, then the next, and so on.

        Args:
            order_counts: Mapping element order -> number of elements of that order

        Returns:
            The abelian type with these order statistics
        """
        group_order = sum(order_counts.values())

        def killed_by(exponent_of: int) -> int:
            return sum(count for order, count in order_counts.items() if exponent_of % order == 0)

        exponents: Dict[int, List[int]] = {}
        for prime in _prime_power_parts(group_order):
            counts_at_level = []
            level = 1
            previous = 1
            while True:
                current = killed_by(prime ** level)
                if current == previous:
                    break
                ratio = current // previous
                rank_here = 0
                while ratio > 1:
                    ratio //= prime
                    rank_here += 1
                counts_at_level.append(rank_here)
                previous = current
                level += 1
            # counts_at_level[j] is the number of factors divisible by p**(j+1)
            rank = counts_at_level[0] if counts_at_level else 0
            exponents[prime] = [sum(1 for r in counts_at_level if r > position)
                                for position in range(rank)]
        return cls(_assemble(exponents))

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "C1"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class SubgroupRecord:
    """
    One subgroup found by the census.

    Attributes:
        ambient: Type of the enclosing group (coordinates refer to its factors)
        generators: Element vectors that generate the subgroup
        type: Isomorphism type of the subgroup
        order: Number of elements
        elements: Sorted element vectors of the subgroup
    """

    ambient: AbelianType
    generators: Tuple[Tuple[int, ...], ...]
    type: AbelianType
    order: int
    elements: Tuple[Tuple[int, ...], ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.order != self.type.order:
            raise InputError(f"Subgroup order {self.order} does not match type {self.type}")
        if self.elements and len(self.elements) != self.order:
            raise InputError("Element list does not match the subgroup order")
        if self.ambient.order % self.order != 0:
            raise InputError("Subgroup order must divide the ambient order")
