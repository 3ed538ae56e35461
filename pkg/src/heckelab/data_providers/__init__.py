"""
Coefficient sources for heckelab: memoized Delta powers and the disk cache.
"""

from .coefficient_cache import CACHE_MAGIC, CoefficientCache
from .delta_provider import DeltaPowerProvider, default_provider, set_default_provider

__all__ = ["CACHE_MAGIC", "CoefficientCache", "DeltaPowerProvider", "default_provider",
           "set_default_provider"]
