"""
Utility helpers for heckelab.
"""

from .validators import ArgumentValidator
from .parallel import parallel_map

__all__ = ["ArgumentValidator", "parallel_map"]
