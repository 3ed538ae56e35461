"""
Level-one modular forms given by a weight and a truncated q-expansion.
"""

from dataclasses import dataclass
from typing import Tuple
import logging

from ..exceptions import InputError
from .qseries import CoeffRing, QSeries, Scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModularForm:
    """
    A q-expansion tagged with its weight.

    Attributes:
        weight: Even nonnegative integer k
        series: Truncated q-expansion
    """

    weight: int
    series: QSeries

    def __post_init__(self):
        if self.weight < 0 or self.weight % 2:
            raise InputError(f"Level-one weights are even and nonnegative, got {self.weight}")
        if not isinstance(self.series, QSeries):
            raise InputError("A modular form needs a QSeries")

    @property
    def ring(self) -> CoeffRing:
        return self.series.ring

    @property
    def precision(self) -> int:
        return self.series.precision

    def __getitem__(self, index: int) -> Scalar:
        return self.series[index]

    def with_series(self, series: QSeries) -> "ModularForm":
        return ModularForm(self.weight, series)

    def truncate(self, precision: int) -> "ModularForm":
        return self.with_series(self.series.truncate(precision))

    def change_ring(self, ring: CoeffRing) -> "ModularForm":
        return self.with_series(self.series.change_ring(ring))

    def scale(self, c: Scalar) -> "ModularForm":
        return self.with_series(self.series.scale(c))

    def _same_weight(self, other: "ModularForm") -> None:
        if other.weight != self.weight:
            raise InputError(f"Cannot add forms of weights {self.weight} and {other.weight}")

    def __add__(self, other: "ModularForm") -> "ModularForm":
        self._same_weight(other)
        return self.with_series(self.series + other.series)

    def __sub__(self, other: "ModularForm") -> "ModularForm":
        self._same_weight(other)
        return self.with_series(self.series - other.series)

    def __mul__(self, other):
        if isinstance(other, ModularForm):
            return ModularForm(self.weight + other.weight, self.series * other.series)
        return self.scale(other)

    __rmul__ = scale

    def __pow__(self, exponent: int) -> "ModularForm":
        return ModularForm(self.weight * exponent, self.series ** exponent)


@dataclass(frozen=True)
class BasisDecomposition:
    """
    Coordinates of a weight-12d form in the basis c4^(3(d-i)) * Delta^i, i = 0..d.

    Attributes:
        d: Weight / 12
        coefficients: coefficients[i] multiplies c4^(3(d-i)) * Delta^i
        ring: Ring the coordinates live in
    """

    d: int
    coefficients: Tuple[Scalar, ...]
    ring: CoeffRing

    def __post_init__(self):
        if len(self.coefficients) != self.d + 1:
            raise InputError(f"Expected {self.d + 1} coordinates, got {len(self.coefficients)}")

    @property
    def delta_coefficient(self) -> Scalar:
        """Coordinate on Delta^d, the b_n^d of a Hecke image of Delta^d."""
        return self.coefficients[self.d]

    @property
    def is_cuspidal(self) -> bool:
        return self.coefficients[0] == 0
