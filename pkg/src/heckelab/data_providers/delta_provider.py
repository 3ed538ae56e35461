"""
Shared source of powers of Delta and of tau(n).

Every calculator that needs Delta^i asks a ``DeltaPowerProvider``. Tables are kept
per (ring, precision) and grown one multiplication at a time, so a scan over
i = 1..d costs d products in total. A table is dropped once another table of the
same ring has at least its precision and as many powers.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple
import logging
import threading

from ..exceptions import InputError
from ..models.qseries import CoeffRing, QSeries, RingKind
from .coefficient_cache import CoefficientCache

logger = logging.getLogger(__name__)

_MIN_TAU_PRECISION = 64


@dataclass
class _PowerTable:
    precision: int
    powers: List[QSeries] = field(default_factory=list)


class DeltaPowerProvider:
    """
    Memoized powers of Delta with an optional on-disk cache behind them.

    Lookups go memory first, then disk, then computation. Requests at a lower
    precision are served by truncating a larger table already in memory.
    """

    def __init__(self, cache: Optional[CoefficientCache] = None):
        """
        Initialize the provider.

        Args:
            cache: Optional coefficient cache consulted on memory misses
        """
        self.cache = cache
        self.hits = 0
        self._tables: Dict[Tuple[CoeffRing, int], _PowerTable] = {}
        self._tau: List[int] = []
        self._lock = threading.Lock()

    @property
    def cache_hits(self) -> int:
        disk_hits = self.cache.hits if self.cache is not None else 0
        return self.hits + disk_hits

    def _table_for(self, precision: int, ring: CoeffRing) -> _PowerTable:
        key = (ring, precision)
        table = self._tables.get(key)
        if table is not None:
            return table

        # seed from the smallest larger table: truncation commutes with products
        larger = [t for (r, size), t in self._tables.items() if r == ring and size > precision]
        if larger:
            source = min(larger, key=lambda t: t.precision)
            powers = [p.truncate(precision) for p in source.powers]
        else:
            from ..calculators.modforms import delta_series
            powers = [QSeries.one(ring, precision), delta_series(precision, ring)]

        table = _PowerTable(precision, powers)
        self._tables[key] = table
        return table

    def _evict_dominated(self, ring: CoeffRing) -> None:
        """Drop tables of this ring that another table covers in precision and length."""
        tables = [t for (r, _), t in self._tables.items() if r == ring]
        for table in tables:
            if any(other is not table and other.precision >= table.precision
                   and len(other.powers) >= len(table.powers) for other in tables):
                del self._tables[(ring, table.precision)]
                logger.debug(f"Dropped Delta powers over {ring} at precision {table.precision}")

    def get_cache_stats(self) -> Dict[str, int]:
        """Memory statistics: tables held, memoized hits and the tau table size."""
        return {"tables": len(self._tables), "hits": self.hits, "tau_size": len(self._tau)}

    def _from_disk(self, i: int, precision: int, ring: CoeffRing) -> Optional[QSeries]:
        if self.cache is None or ring.kind is RingKind.BIG_RATIONAL:
            return None
        values = self.cache.load("delta_pow", i, precision, ring.modulus)
        return QSeries(ring, values) if values is not None else None

    def power(self, i: int, precision: int, ring: Optional[CoeffRing] = None) -> QSeries:
        """
        Delta^i to the given precision.

        Args:
            i: Nonnegative exponent
            precision: Number of coefficients wanted
            ring: Coefficient ring (default exact integers)

        Returns:
            QSeries of Delta^i
        """
        ring = ring or CoeffRing.integers()
        if i < 0:
            raise InputError(f"Delta powers need i >= 0, got {i}")
        if precision < 1:
            raise InputError(f"Precision must be positive, got {precision}")

        with self._lock:
            for (table_ring, size), table in self._tables.items():
                if table_ring == ring and size >= precision and len(table.powers) > i:
                    self.hits += 1
                    return table.powers[i].truncate(precision)

            if (ring, precision) not in self._tables:
                cached = self._from_disk(i, precision, ring)
                if cached is not None:
                    return cached

            table = self._table_for(precision, ring)
            if len(table.powers) <= i:
                logger.debug(f"Extending Delta powers over {ring} at precision {precision} "
                             f"from {len(table.powers) - 1} to {i}")
            base = table.powers[1]
            while len(table.powers) <= i:
                table.powers.append(table.powers[-1] * base)
            self._evict_dominated(ring)
            return table.powers[i]

    def powers(self, imax: int, precision: int, ring: Optional[CoeffRing] = None) -> List[QSeries]:
        """[Delta^0, Delta^1, ..., Delta^imax] to the given precision."""
        self.power(imax, precision, ring)
        return [self.power(i, precision, ring) for i in range(imax + 1)]

    def tau(self, n: int) -> int:
        """Ramanujan's tau(n), growing the exact table by doubling when needed."""
        if n < 1:
            raise InputError(f"tau(n) needs n >= 1, got {n}")

        with self._lock:
            if n < len(self._tau):
                self.hits += 1
                return self._tau[n]

            if self.cache is not None:
                path = self.cache.find("tau", 1, 0, n + 1)
                if path is not None:
                    self._tau = self.cache.read_file(path)
                    self.cache.hits += 1
                    return self._tau[n]

            size = max(n + 1, 2 * len(self._tau), _MIN_TAU_PRECISION)
            from ..calculators.modforms import delta_series
            self._tau = delta_series(size, CoeffRing.integers()).to_list()
            logger.debug(f"Computed tau table up to {size - 1}")
            return self._tau[n]

    def tau_table(self, precision: int) -> List[int]:
        """Coefficients of q^0 .. q^(precision-1) of Delta."""
        self.tau(max(precision - 1, 1))
        return self._tau[:precision]


_default_provider: Optional[DeltaPowerProvider] = None


def default_provider() -> DeltaPowerProvider:
    """Process-wide provider used when a calculator is not handed one."""
    global _default_provider
    if _default_provider is None:
        _default_provider = DeltaPowerProvider()
    return _default_provider


def set_default_provider(provider: Optional[DeltaPowerProvider]) -> None:
    global _default_provider
    _default_provider = provider
