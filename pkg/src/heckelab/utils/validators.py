"""
Argument validators for heckelab operations.
"""

from math import gcd
from typing import Any, List, Tuple
import logging

from ..exceptions import InputError

logger = logging.getLogger(__name__)

MAEDA_MAX_D = 1000
PRIME_SIDES = (2, 3)


class ArgumentValidator:
    """
    Checks on the integer arguments shared by the calculators.

    The ``validate_*`` methods return booleans or (is_valid, errors) tuples; the
    ``require_*`` methods raise :class:`InputError` instead.
    """

    @staticmethod
    def validate_positive_integer(value: Any) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and value > 0

    @staticmethod
    def validate_nonnegative_integer(value: Any) -> bool:
        return isinstance(value, int) and not isinstance(value, bool) and value >= 0

    @staticmethod
    def validate_weight(weight: Any) -> bool:
        """Level-one weights are even and nonnegative."""
        return ArgumentValidator.validate_nonnegative_integer(weight) and weight % 2 == 0

    @staticmethod
    def validate_modulus(modulus: Any) -> bool:
        """0 selects exact integers; anything else must be at least 2."""
        return ArgumentValidator.validate_nonnegative_integer(modulus) and modulus != 1

    @staticmethod
    def require_positive(name: str, value: Any) -> int:
        if not ArgumentValidator.validate_positive_integer(value):
            raise InputError(f"{name} must be a positive integer, got {value!r}")
        return value

    @staticmethod
    def require_weight(weight: Any) -> int:
        if not ArgumentValidator.validate_weight(weight):
            raise InputError(f"Weight must be an even nonnegative integer, got {weight!r}")
        return weight

    @staticmethod
    def require_modulus(modulus: Any) -> int:
        if not ArgumentValidator.validate_modulus(modulus):
            raise InputError(f"Modulus must be 0 or at least 2, got {modulus!r}")
        return modulus

    @staticmethod
    def validate_maeda_parameters(d: Any, n: Any, prime_side: Any) -> Tuple[bool, List[str]]:
        """
        Validate the inputs of a nonvanishing certificate.

        Args:
            d: Weight index, 2 <= d <= 1000
            n: Hecke index, n >= 2 and coprime to d
            prime_side: 2 (n odd) or 3 (n prime to 3)

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []

        if not ArgumentValidator.validate_positive_integer(d):
            errors.append(f"d must be a positive integer, got {d!r}")
        if not ArgumentValidator.validate_positive_integer(n):
            errors.append(f"n must be a positive integer, got {n!r}")
        if prime_side not in PRIME_SIDES:
            errors.append(f"prime side must be 2 or 3, got {prime_side!r}")

        if errors:  # the remaining checks need integers
            return False, errors

        if d < 2:
            errors.append(f"d must be at least 2 (S_12d' is zero for d = {d})")
        if d > MAEDA_MAX_D:
            errors.append(f"d must be at most {MAEDA_MAX_D} (weights up to 12000)")
        if n < 2:
            errors.append(f"n must be at least 2, got {n}")
        if gcd(d, n) != 1:
            errors.append(f"gcd(d, n) = {gcd(d, n)} must be 1")
        if prime_side == 3 and n % 3 == 0:
            errors.append(f"3 | n ({n}) on the 3-side")
        if prime_side == 2 and n % 2 == 0:
            errors.append(f"2 | n ({n}) on the 2-side")

        return len(errors) == 0, errors
