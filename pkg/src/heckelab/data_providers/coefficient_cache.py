"""
On-disk cache of coefficient tables.

File layout (UTF-8, LF line endings)::

    HECKELAB-CACHE v1
    kind=<tau|delta_pow> i=<i> N=<N> mod=<M|0>
    crc32=<8 hex digits of the payload>
    <coefficient of q^0>
    ...
    <coefficient of q^(N-1)>

The payload is every line after the checksum line, each terminated by LF.
"""

from pathlib import Path
from typing import List, Optional, Sequence, Union
import logging
import os
import re
import tempfile
import zlib

from ..exceptions import CacheChecksumError, CacheError, CacheVersionError, InputError

logger = logging.getLogger(__name__)

CACHE_MAGIC = "HECKELAB-CACHE v1"
CACHE_KINDS = ("tau", "delta_pow")
_HEADER = re.compile(r"^kind=(\w+) i=(\d+) N=(\d+) mod=(\d+)$")


class CoefficientCache:
    """
    Directory of coefficient tables keyed by (kind, i, N, mod).

    Writes go to a temporary file in the same directory and are renamed into
    place, so readers never see a partial file.
    """

    def __init__(self, cache_dir: Union[str, Path]):
        self.cache_dir = Path(cache_dir)
        self.hits = 0

    def path_for(self, kind: str, i: int, precision: int, modulus: int) -> Path:
        self._check_key(kind, i, precision, modulus)
        return self.cache_dir / f"{kind}_i{i}_N{precision}_mod{modulus}.txt"

    @staticmethod
    def _check_key(kind: str, i: int, precision: int, modulus: int) -> None:
        if kind not in CACHE_KINDS:
            raise InputError(f"Unknown cache kind {kind!r}; expected one of {CACHE_KINDS}")
        if i < 0 or precision < 1 or modulus < 0 or modulus == 1:
            raise InputError(f"Invalid cache key i={i} N={precision} mod={modulus}")

    @staticmethod
    def _payload(coefficients: Sequence[int]) -> str:
        return "".join(f"{int(c)}\n" for c in coefficients)

    def store(self, kind: str, i: int, precision: int, modulus: int,
              coefficients: Sequence[int]) -> Path:
        """
        Write a table atomically.

        Args:
            kind: 'tau' or 'delta_pow'
            i: Power of Delta the table belongs to
            precision: Number of coefficients N
            modulus: Residue modulus, 0 for exact integers
            coefficients: Coefficients of q^0 .. q^(N-1)

        Returns:
            Path of the written file
        """
        if len(coefficients) != precision:
            raise InputError(f"Expected {precision} coefficients, got {len(coefficients)}")

        path = self.path_for(kind, i, precision, modulus)
        payload = self._payload(coefficients)
        checksum = format(zlib.crc32(payload.encode("utf-8")) & 0xFFFFFFFF, "08x")
        text = (f"{CACHE_MAGIC}\n"
                f"kind={kind} i={i} N={precision} mod={modulus}\n"
                f"crc32={checksum}\n"
                f"{payload}")

        self.cache_dir.mkdir(parents=True, exist_ok=True)
        handle, temp_name = tempfile.mkstemp(dir=self.cache_dir, prefix=".tmp-", suffix=".txt")
        try:
            with os.fdopen(handle, "wb") as temp_file:
                temp_file.write(text.encode("utf-8"))
            os.replace(temp_name, path)
        except OSError as exc:
            Path(temp_name).unlink(missing_ok=True)
            raise CacheError(f"Could not write {path}: {exc}")

        logger.info(f"Stored {kind} table i={i} N={precision} mod={modulus} at {path}")
        return path

    def read_file(self, path: Union[str, Path]) -> List[int]:
        """
        Read and verify a cache file.

        Raises:
            CacheVersionError: unknown magic or version line
            CacheChecksumError: malformed header, truncated payload or checksum mismatch
        """
        path = Path(path)
        try:
            text = path.read_bytes().decode("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise CacheError(f"Could not read {path}: {exc}")

        magic, _, rest = text.partition("\n")
        if magic != CACHE_MAGIC:
            raise CacheVersionError(f"{path} has header {magic!r}, expected {CACHE_MAGIC!r}")

        header, _, rest = rest.partition("\n")
        checksum_line, _, payload = rest.partition("\n")
        match = _HEADER.match(header)
        if not match or not checksum_line.startswith("crc32="):
            raise CacheChecksumError(f"{path} has a malformed header")

        expected = checksum_line[len("crc32="):]
        actual = format(zlib.crc32(payload.encode("utf-8")) & 0xFFFFFFFF, "08x")
        if actual != expected:
            raise CacheChecksumError(f"{path} checksum {actual} does not match recorded {expected}")

        values = [int(line) for line in payload.split("\n") if line]
        precision = int(match.group(3))
        if len(values) != precision:
            raise CacheChecksumError(f"{path} holds {len(values)} coefficients, header says {precision}")
        return values

    def load(self, kind: str, i: int, precision: int, modulus: int) -> Optional[List[int]]:
        """Coefficients of the matching table, or None when it is not cached."""
        path = self.path_for(kind, i, precision, modulus)
        if not path.exists():
            return None
        values = self.read_file(path)
        self.hits += 1
        logger.debug(f"Cache hit for {path.name}")
        return values

    def find(self, kind: str, i: int, modulus: int, min_precision: int) -> Optional[Path]:
        """Smallest cached table of this kind with at least ``min_precision`` coefficients."""
        if not self.cache_dir.is_dir():
            return None
        best = None
        for path in self.cache_dir.glob(f"{kind}_i{i}_N*_mod{modulus}.txt"):
            found = re.search(r"_N(\d+)_", path.name)
            if found and int(found.group(1)) >= min_precision:
                size = int(found.group(1))
                if best is None or size < best[0]:
                    best = (size, path)
        return best[1] if best else None

    def entries(self) -> List[Path]:
        if not self.cache_dir.is_dir():
            return []
        return sorted(p for p in self.cache_dir.glob("*.txt") if not p.name.startswith(".tmp-"))
