"""
Verdicts of Galois-group certification and Maeda nonvanishing certificates.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import InputError

Witness = Tuple[int, Tuple[int, ...]]


class VerdictStatus(str, Enum):
    CERTIFIED = "Certified"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SquarefreeFailure:
    """The polynomial is not squarefree modulo this prime."""

    prime: int


@dataclass
class Verdict:
    """
    Result of trying to prove that a polynomial has full symmetric Galois group.

    Attributes:
        status: Certified, Refuted or Inconclusive
        degree: Degree of the polynomial
        witnesses: (prime, factor degrees) pairs supporting the status
        budget_used: Number of primes examined
        reason: Short description of the deciding argument
        discriminant: Discriminant, when it was needed
    """

    status: VerdictStatus
    degree: int
    witnesses: List[Witness] = field(default_factory=list)
    budget_used: int = 0
    reason: str = ""
    discriminant: Optional[int] = None

    def __post_init__(self):
        if self.status is not VerdictStatus.INCONCLUSIVE and not self.witnesses:
            raise InputError(f"A {self.status.value} verdict needs a witness")

    @property
    def certified(self) -> bool:
        return self.status is VerdictStatus.CERTIFIED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "degree": self.degree,
            "witnesses": [[p, list(degrees)] for p, degrees in self.witnesses],
            "budget_used": self.budget_used,
            "reason": self.reason,
            "discriminant": self.discriminant,
        }


@dataclass(frozen=True)
class Condition1Result:
    """
    Outcome of the congruence condition on the Delta-power basis.

    Attributes:
        d: The weight index being tested
        passed: Whether the condition holds
        exponent: For p = 2, the largest e with every coefficient divisible by 2^e (capped at 3)
        witness: First exponent i of Delta whose coefficient breaks the condition
    """

    d: int
    passed: bool
    exponent: Optional[int] = None
    witness: Optional[int] = None


@dataclass(frozen=True)
class ChainLink:
    """One published result a certificate relies on."""

    citation: str
    statement: str
    satisfied: bool


@dataclass
class MaedaCertificate:
    """
    Certificate that the T_n matrix on S_{12d} is nonsingular modulo a prime side.

    Attributes:
        d: Weight index (weight 12d)
        n: Hecke index
        prime_side: 2 or 3
        modulus: 3 or 2^k for the decisive exponent k
        condition1: Whether the Delta-power congruence condition holds
        condition1_witness: First Delta exponent i breaking condition 1, or on the
            2-side the first i attaining the minimum valuation
        condition1_exponent: 2-side only, the minimum 2-adic valuation of the
            q^d coefficients of Delta^i, capped at 3
        decisive_exponent: 2-side only, the k of the modulus 2^k; the threshold for
            d mod 8, which is at most condition1_exponent when condition 1 holds
        condition2: Whether sigma(n) is a unit at the modulus
        nonvanishing_value: a_{dn}(Delta^d) modulo the modulus
        chain: Published results used, with whether their hypotheses were met
        verdict: True when every link holds
    """

    d: int
    n: int
    prime_side: int
    modulus: int
    condition1: bool
    condition2: bool
    nonvanishing_value: Optional[int]
    chain: List[ChainLink] = field(default_factory=list)
    verdict: bool = False
    condition1_witness: Optional[int] = None
    condition1_exponent: Optional[int] = None
    decisive_exponent: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "n": self.n,
            "prime_side": self.prime_side,
            "modulus": self.modulus,
            "condition1": self.condition1,
            "condition1_witness": self.condition1_witness,
            "condition1_exponent": self.condition1_exponent,
            "decisive_exponent": self.decisive_exponent,
            "condition2": self.condition2,
            "nonvanishing_value": self.nonvanishing_value,
            "chain": [{"citation": link.citation, "statement": link.statement,
                       "satisfied": link.satisfied} for link in self.chain],
            "verdict": self.verdict,
        }
