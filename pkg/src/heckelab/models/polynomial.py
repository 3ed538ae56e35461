"""
Integer polynomials as produced by characteristic-polynomial computations.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..exceptions import InputError


@dataclass(frozen=True)
class IntPolynomial:
    """
    Polynomial with integer coefficients.

    Attributes:
        coefficients: Ascending coefficients (constant term first), no trailing zeros
    """

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            raise InputError("The zero polynomial is not supported")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_descending(cls, coefficients: Sequence[int]) -> "IntPolynomial":
        return cls(tuple(int(c) for c in reversed(list(coefficients))))

    def descending(self) -> List[int]:
        return list(reversed(self.coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coefficients[-1]

    @property
    def is_monic(self) -> bool:
        return self.leading_coefficient == 1

    def __call__(self, x):
        result = 0
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __str__(self) -> str:
        terms = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            if power == 0:
                body = str(abs(c))
            else:
                monomial = "X" if power == 1 else f"X^{power}"
                body = monomial if abs(c) == 1 else f"{abs(c)}*{monomial}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text
