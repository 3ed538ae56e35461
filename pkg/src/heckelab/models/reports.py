"""
Result records for verification runs.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import InputError


@dataclass
class CheckReport:
    """
    Outcome of checking a family of identities.

    Attributes:
        family: Name of the identity family, e.g. 'hecke-composition'
        params: Parameters the family was instantiated with
        range: Inclusive (low, high) range scanned, when the family runs over one
        failures: One entry per failing instance, with the inputs and both sides
        mode: Variant of the check, when it has several
        checked: Number of instances examined
        runtime_ms: Wall-clock time of the run
        cache_hits: Coefficient-cache hits during the run
        details: Extra family-specific output (computed sets, values, ...)
    """

    family: str
    params: Dict[str, Any] = field(default_factory=dict)
    range: Optional[Tuple[int, int]] = None
    failures: List[Dict[str, Any]] = field(default_factory=list)
    mode: Optional[str] = None
    checked: int = 0
    runtime_ms: float = 0.0
    cache_hits: int = 0
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record_failure(self, **entry: Any) -> None:
        self.failures.append(entry)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "params": dict(self.params),
            "range": list(self.range) if self.range is not None else None,
            "failures": list(self.failures),
            "mode": self.mode,
            "checked": self.checked,
            "runtime_ms": round(self.runtime_ms, 3),
            "cache_hits": self.cache_hits,
            "passed": self.passed,
            "details": dict(self.details),
        }


@dataclass
class CongruenceReport(CheckReport):
    """A congruence family scanned over a range of n."""

    def __post_init__(self):
        if self.range is None:
            raise InputError("A congruence report needs the scanned range")
        low, high = self.range
        if low > high:
            raise InputError(f"Empty range {self.range}")
