"""
Exception hierarchy for heckelab.

Core computations raise these; the report layer and the command line catch
``HeckelabError`` and turn it into an exit status.
"""

from typing import Optional


class HeckelabError(Exception):
    """Base class for every error raised by the package."""


class InputError(HeckelabError, ValueError):
    """A precondition on the arguments of an operation does not hold."""


class RingMismatchError(InputError):
    """Two series over different coefficient rings were combined."""


class PrecisionError(InputError):
    """A series does not carry enough known coefficients for an operation."""

    def __init__(self, message: str, required: int, available: int):
        super().__init__(f"{message} (required precision {required}, available {available})")
        self.required = required
        self.available = available


class DivisibilityError(InputError):
    """An exact division failed at a particular coefficient."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} at index {index}")
        self.index = index


class ProportionalityError(HeckelabError):
    """A form is not an eigenvector of the operator it was tested against."""

    def __init__(self, message: str, index: Optional[int] = None):
        detail = f" (first witness at index {index})" if index is not None else ""
        super().__init__(f"{message}{detail}")
        self.index = index


class ResourceLimitError(HeckelabError):
    """A configured bound or budget would be exceeded."""


class CacheError(HeckelabError):
    """A coefficient cache file could not be used."""


class CacheChecksumError(CacheError):
    """The payload of a cache file does not match its recorded checksum."""


class CacheVersionError(CacheError):
    """The cache file was written by an incompatible format version."""
