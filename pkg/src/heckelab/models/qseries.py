"""
Truncated q-expansions over a coefficient ring.

A ``QSeries`` holds the coefficients of q^0 .. q^(N-1) of a power series; N is its
precision. Coefficients live in a numpy array: ``object`` dtype for exact integers
and rationals, ``int64`` for residues whose products fit a machine word.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Union
import logging

import numpy as np

from ..exceptions import DivisibilityError, InputError, PrecisionError, RingMismatchError

logger = logging.getLogger(__name__)

_INT64_MAX = 2 ** 63 - 1
_WORD_MODULUS_LIMIT = 2 ** 31
# a factor counts as sparse when it has fewer than N / _SPARSE_RATIO nonzero terms
_SPARSE_RATIO = 8

Scalar = Union[int, Fraction]


class RingKind(str, Enum):
    BIG_INT = "BigInt"
    BIG_RATIONAL = "BigRational"
    MOD_M = "ModM"


@dataclass(frozen=True)
class CoeffRing:
    """
    Coefficient ring of a series.

    Attributes:
        kind: Exact integers, exact rationals, or integers modulo ``modulus``
        modulus: M >= 2 for residues, 0 otherwise
    """

    kind: RingKind
    modulus: int = 0

    def __post_init__(self):
        kind = RingKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is RingKind.MOD_M:
            if self.modulus < 2:
                raise InputError(f"Residue ring needs a modulus of at least 2, got {self.modulus}")
        elif self.modulus != 0:
            raise InputError(f"{kind.value} takes no modulus")

    @classmethod
    def integers(cls) -> "CoeffRing":
        return cls(RingKind.BIG_INT)

    @classmethod
    def rationals(cls) -> "CoeffRing":
        return cls(RingKind.BIG_RATIONAL)

    @classmethod
    def mod(cls, modulus: int) -> "CoeffRing":
        return cls(RingKind.MOD_M, modulus)

    @classmethod
    def from_modulus(cls, modulus: int) -> "CoeffRing":
        """Integers for modulus 0, residues otherwise."""
        return cls.integers() if modulus == 0 else cls.mod(modulus)

    @property
    def is_residue(self) -> bool:
        return self.kind is RingKind.MOD_M

    @property
    def word_sized(self) -> bool:
        """Residues small enough for int64 storage and products."""
        return self.kind is RingKind.MOD_M and self.modulus <= _WORD_MODULUS_LIMIT

    @property
    def dtype(self):
        return np.int64 if self.word_sized else object

    def element(self, value) -> Scalar:
        """
        Canonical representative of ``value`` in this ring.

        Args:
            value: An int, numpy integer or Fraction

        Returns:
            int for integer and residue rings (residues in [0, M)), Fraction for rationals
        """
        if isinstance(value, np.integer):
            value = int(value)
        if not isinstance(value, (int, Fraction)):
            raise InputError(f"Unsupported coefficient {value!r} of type {type(value).__name__}")

        if self.kind is RingKind.BIG_RATIONAL:
            return Fraction(value)

        if isinstance(value, Fraction):
            if value.denominator == 1:
                value = value.numerator
            elif self.kind is RingKind.MOD_M:
                try:
                    inverse = pow(value.denominator, -1, self.modulus)
                except ValueError:
                    raise InputError(f"Denominator of {value} is not invertible modulo {self.modulus}")
                return (value.numerator * inverse) % self.modulus
            else:
                raise InputError(f"{value} is not an integer")

        if self.kind is RingKind.MOD_M:
            return int(value) % self.modulus
        return int(value)

    def __str__(self) -> str:
        if self.kind is RingKind.BIG_INT:
            return "ZZ"
        if self.kind is RingKind.BIG_RATIONAL:
            return "QQ"
        return f"Z/{self.modulus}"


def _accumulation_budget(modulus: int) -> int:
    """Products below (M-1)^2 that can be summed in int64 before a reduction."""
    return max(1, (_INT64_MAX - modulus) // max((modulus - 1) ** 2, 1))


def _sparse_word(sparse: np.ndarray, support: np.ndarray, dense: np.ndarray, modulus: int) -> np.ndarray:
    n = len(dense)
    out = np.zeros(n, dtype=np.int64)
    budget = _accumulation_budget(modulus)
    pending = 0
    for i in support:
        out[i:] += sparse[i] * dense[:n - i]
        pending += 1
        if pending >= budget:
            out %= modulus
            pending = 0
    return out % modulus


def _dense_word(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    n = len(a)
    out = np.zeros(n, dtype=np.int64)
    # each output coefficient of a chunk sums at most `chunk` products
    chunk = max(1, _INT64_MAX // max((modulus - 1) ** 2, 1))
    for start in range(0, n, chunk):
        piece = a[start:start + chunk]
        if not piece.any():
            continue
        part = np.convolve(piece, b[:n - start])[:n - start] % modulus
        out[start:] = (out[start:] + part) % modulus
    return out


def _sparse_object(sparse: np.ndarray, support: np.ndarray, dense: np.ndarray) -> np.ndarray:
    n = len(dense)
    out = np.zeros(n, dtype=object)
    for i in support:
        out[i:] += sparse[i] * dense[:n - i]
    return out


def _convolve(ring: CoeffRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated product of two equal-length coefficient arrays."""
    support_a = np.flatnonzero(a)
    support_b = np.flatnonzero(b)
    if len(support_b) < len(support_a):
        a, b = b, a
        support_a = support_b

    if ring.word_sized:
        if len(support_a) * _SPARSE_RATIO < len(a):
            return _sparse_word(a, support_a, b, ring.modulus)
        return _dense_word(a, b, ring.modulus)
    return _sparse_object(a, support_a, b)


class QSeries:
    """
    Truncated power series in q over a :class:`CoeffRing`.

    Instances are immutable. Binary operations require equal rings and return a
    result whose precision is the smaller of the two operands' precisions.
    """

    __slots__ = ("_ring", "_coeffs")

    def __init__(self, ring: CoeffRing, coefficients: Iterable):
        values = [ring.element(c) for c in coefficients]
        if not values:
            raise InputError("A series needs a positive precision")
        array = np.empty(len(values), dtype=ring.dtype)
        array[:] = values
        self._ring = ring
        self._coeffs = array
        self._coeffs.setflags(write=False)

    @classmethod
    def _wrap(cls, ring: CoeffRing, array: np.ndarray) -> "QSeries":
        """Adopt an array produced by internal arithmetic, normalizing representatives."""
        if ring.kind is RingKind.MOD_M:
            array = array % ring.modulus
            if ring.word_sized and array.dtype != np.int64:
                array = array.astype(np.int64)
        elif ring.kind is RingKind.BIG_RATIONAL:
            normalized = np.empty(len(array), dtype=object)
            normalized[:] = [Fraction(x) for x in array]
            array = normalized
        elif array.dtype != object:
            array = array.astype(object)
        else:
            array = array.copy()

        instance = cls.__new__(cls)
        instance._ring = ring
        instance._coeffs = array
        instance._coeffs.setflags(write=False)
        return instance

    @classmethod
    def zero(cls, ring: CoeffRing, precision: int) -> "QSeries":
        return cls._wrap(ring, np.zeros(_checked_precision(precision), dtype=ring.dtype))

    @classmethod
    def one(cls, ring: CoeffRing, precision: int) -> "QSeries":
        return cls.monomial(ring, precision, 0)

    @classmethod
    def monomial(cls, ring: CoeffRing, precision: int, exponent: int, coefficient: Scalar = 1) -> "QSeries":
        """c * q**exponent known to the given precision (zero if exponent >= precision)."""
        array = np.zeros(_checked_precision(precision), dtype=object)
        if exponent < 0:
            raise InputError("Exponents of q must be nonnegative")
        if exponent < precision:
            array[exponent] = ring.element(coefficient)
        return cls._wrap(ring, array)

    @property
    def ring(self) -> CoeffRing:
        return self._ring

    @property
    def precision(self) -> int:
        return len(self._coeffs)

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of the coefficient array."""
        return self._coeffs

    def __len__(self) -> int:
        return self.precision

    def __getitem__(self, index: int) -> Scalar:
        if index < 0 or index >= self.precision:
            raise PrecisionError(f"Coefficient of q^{index} is not known", index + 1, self.precision)
        value = self._coeffs[index]
        if self._ring.kind is RingKind.BIG_RATIONAL:
            return Fraction(value)
        return int(value)

    def to_list(self) -> List[Scalar]:
        if self._ring.kind is RingKind.BIG_RATIONAL:
            return [Fraction(x) for x in self._coeffs]
        return [int(x) for x in self._coeffs]

    def truncate(self, precision: int) -> "QSeries":
        """Keep the first ``precision`` coefficients."""
        if precision < 1 or precision > self.precision:
            raise PrecisionError("Cannot truncate to this precision", precision, self.precision)
        if precision == self.precision:
            return self
        return QSeries._wrap(self._ring, self._coeffs[:precision])

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero coefficient, None for the zero series."""
        support = np.flatnonzero(self._coeffs)
        return int(support[0]) if len(support) else None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def _aligned(self, other: "QSeries"):
        if not isinstance(other, QSeries):
            raise InputError(f"Expected a QSeries, got {type(other).__name__}")
        if other._ring != self._ring:
            raise RingMismatchError(f"Cannot combine series over {self._ring} and {other._ring}")
        n = min(self.precision, other.precision)
        return self._coeffs[:n], other._coeffs[:n]

    def add(self, other: "QSeries") -> "QSeries":
        a, b = self._aligned(other)
        return QSeries._wrap(self._ring, a + b)

    def sub(self, other: "QSeries") -> "QSeries":
        a, b = self._aligned(other)
        return QSeries._wrap(self._ring, a - b)

    def neg(self) -> "QSeries":
        return QSeries._wrap(self._ring, -self._coeffs)

    def scale(self, c: Scalar) -> "QSeries":
        """Multiply every coefficient by the scalar c."""
        factor = self._ring.element(c)
        if self._ring.word_sized:
            return QSeries._wrap(self._ring, self._coeffs * np.int64(factor))
        return QSeries._wrap(self._ring, self._coeffs * factor)

    def mul(self, other: "QSeries") -> "QSeries":
        a, b = self._aligned(other)
        return QSeries._wrap(self._ring, _convolve(self._ring, a, b))

    def pow(self, exponent: int) -> "QSeries":
        """Power by repeated squaring; the zeroth power is 1 at this precision."""
        if exponent < 0:
            raise InputError("Negative powers of a series are not supported")
        result = QSeries.one(self._ring, self.precision)
        base = self
        while exponent:
            if exponent & 1:
                result = result.mul(base)
            exponent >>= 1
            if exponent:
                base = base.mul(base)
        return result

    def divide_exact(self, c: int) -> "QSeries":
        """
        Divide an integer series by c, requiring every coefficient to be divisible.

        Raises:
            DivisibilityError: naming the first coefficient that is not divisible
        """
        if self._ring.kind is not RingKind.BIG_INT:
            raise InputError("Exact scalar division is defined for integer series only")
        if c == 0:
            raise InputError("Division by zero")
        for index, value in enumerate(self._coeffs):
            if value % c:
                raise DivisibilityError(f"Coefficient {value} is not divisible by {c}", index)
        return QSeries._wrap(self._ring, np.array([v // c for v in self._coeffs], dtype=object))

    def change_ring(self, ring: CoeffRing) -> "QSeries":
        """
        Map the coefficients into another ring.

        Integers map anywhere, residues map to residues modulo a divisor, rationals
        map anywhere their denominators allow.
        """
        if ring == self._ring:
            return self
        if self._ring.kind is RingKind.MOD_M:
            if ring.kind is not RingKind.MOD_M or self._ring.modulus % ring.modulus:
                raise InputError(f"Cannot map {self._ring} to {ring}")
        return QSeries(ring, self._coeffs)

    def reduce_mod(self, modulus: int) -> "QSeries":
        if self._ring.kind is RingKind.BIG_RATIONAL:
            raise InputError("Reduce rational series with change_ring")
        return self.change_ring(CoeffRing.mod(modulus))

    def __add__(self, other: "QSeries") -> "QSeries":
        return self.add(other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self.sub(other)

    def __neg__(self) -> "QSeries":
        return self.neg()

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, exponent: int) -> "QSeries":
        return self.pow(exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self._ring == other._ring and self.precision == other.precision
                and bool(np.array_equal(self._coeffs, other._coeffs)))

    __hash__ = None

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.to_list()[:6])
        more = ", ..." if self.precision > 6 else ""
        return f"QSeries({self._ring}, [{shown}{more}], precision={self.precision})"


def _checked_precision(precision: int) -> int:
    if precision < 1:
        raise InputError(f"Precision must be positive, got {precision}")
    return precision
