"""
Tests for the on-disk coefficient cache and the Delta-power provider
"""
import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

import pytest

from heckelab.calculators import maeda
from heckelab.calculators.modforms import delta_series
from heckelab.data_providers.coefficient_cache import CACHE_MAGIC, CoefficientCache
from heckelab.data_providers.delta_provider import (
    DeltaPowerProvider, default_provider, set_default_provider,
)
from heckelab.exceptions import CacheChecksumError, CacheError, CacheVersionError, InputError
from heckelab.models.qseries import CoeffRing


@pytest.fixture
def cache(tmp_path):
    return CoefficientCache(tmp_path / "cache")


def test_store_and_load_tau_table(cache):
    path = maeda.cache_store(cache, "tau", 100)
    assert path.name == "tau_i1_N100_mod0.txt"
    values = maeda.cache_load(cache, "tau", 100)
    assert values == delta_series(100).to_list()
    assert values[5] == 4830


def test_file_layout(cache):
    path = cache.store("delta_pow", 2, 4, 0, [0, 0, 1, -48])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == CACHE_MAGIC
    assert lines[1] == "kind=delta_pow i=2 N=4 mod=0"
    assert lines[2].startswith("crc32=")
    assert len(lines[2]) == len("crc32=") + 8
    assert lines[3:] == ["0", "0", "1", "-48"]
    assert not [p for p in cache.cache_dir.iterdir() if p.name.startswith(".tmp-")]


def test_store_delta_power_residues(cache):
    provider = DeltaPowerProvider()
    maeda.cache_store(cache, "delta_pow", 510, i=2, modulus=3, provider=provider)
    values = maeda.cache_load(cache, "delta_pow", 510, i=2, modulus=3)
    assert values == provider.power(2, 510, CoeffRing.mod(3)).to_list()


def test_truncated_file_is_rejected(cache):
    path = maeda.cache_store(cache, "tau", 50)
    text = path.read_text(encoding="utf-8")
    path.write_text(text[: len(text) // 2], encoding="utf-8")
    with pytest.raises(CacheChecksumError):
        cache.load("tau", 1, 50, 0)


def test_corrupted_coefficient_is_rejected(cache):
    path = cache.store("tau", 1, 3, 0, [0, 1, -24])
    path.write_text(path.read_text(encoding="utf-8").replace("-24", "-25"), encoding="utf-8")
    with pytest.raises(CacheChecksumError):
        cache.read_file(path)


def test_version_mismatch(cache):
    path = cache.store("tau", 1, 3, 0, [0, 1, -24])
    text = path.read_text(encoding="utf-8").replace(CACHE_MAGIC, "HECKELAB-CACHE v0")
    path.write_text(text, encoding="utf-8")
    with pytest.raises(CacheVersionError):
        cache.read_file(path)


def test_missing_table(cache):
    assert cache.load("tau", 1, 10, 0) is None
    with pytest.raises(CacheError):
        maeda.cache_load(cache, "tau", 10)


def test_invalid_keys(cache):
    with pytest.raises(InputError):
        cache.path_for("eta", 1, 10, 0)
    with pytest.raises(InputError):
        cache.path_for("tau", 1, 10, 1)
    with pytest.raises(InputError):
        cache.store("tau", 1, 3, 0, [0, 1])
    with pytest.raises(InputError):
        maeda.cache_store(cache, "eta", 10)


def test_find_prefers_smallest_sufficient_table(cache):
    cache.store("tau", 1, 3, 0, [0, 1, -24])
    cache.store("tau", 1, 5, 0, [0, 1, -24, 252, -1472])
    cache.store("tau", 1, 8, 0, delta_series(8).to_list())
    assert cache.find("tau", 1, 0, 4).name == "tau_i1_N5_mod0.txt"
    assert cache.find("tau", 1, 0, 9) is None
    assert len(cache.entries()) == 3


def test_verify_cache(cache):
    maeda.cache_store(cache, "tau", 40)
    maeda.cache_store(cache, "delta_pow", 30, i=3, modulus=16)
    report = maeda.cache_verify(cache)
    assert report.passed
    assert report.checked == 2


def test_verify_reports_wrong_values(cache):
    cache.store("tau", 1, 3, 0, [0, 1, 24])
    report = maeda.cache_verify(cache)
    assert not report.passed
    assert report.failures[0]["file"] == "tau_i1_N3_mod0.txt"


def test_provider_reads_the_disk_cache(cache):
    writer = DeltaPowerProvider()
    maeda.cache_store(cache, "delta_pow", 60, i=2, modulus=3, provider=writer)

    reader = DeltaPowerProvider(cache)
    series = reader.power(2, 60, CoeffRing.mod(3))
    assert series == writer.power(2, 60, CoeffRing.mod(3))
    assert cache.hits == 1
    assert reader.cache_hits == 1


def test_provider_reads_cached_tau(cache):
    maeda.cache_store(cache, "tau", 100)
    reader = DeltaPowerProvider(cache)
    assert reader.tau(50) == delta_series(51)[50]
    assert cache.hits == 1


def test_provider_memoizes_and_truncates():
    provider = DeltaPowerProvider()
    ring = CoeffRing.mod(16)
    full = provider.power(5, 40, ring)
    assert provider.power(5, 20, ring) == full.truncate(20)
    assert provider.hits == 1
    assert provider.power(3, 40, ring) == delta_series(40, ring) ** 3


def test_provider_exact_powers():
    provider = DeltaPowerProvider()
    powers = provider.powers(3, 6)
    assert [p.to_list() for p in powers[:3]] == [
        [1, 0, 0, 0, 0, 0],
        [0, 1, -24, 252, -1472, 4830],
        [0, 0, 1, -48, 1080, -15040],
    ]
    assert powers[3].to_list() == [0, 0, 0, 1, -72, 2484]
    with pytest.raises(InputError):
        provider.power(-1, 5)


def test_provider_tau_table():
    provider = DeltaPowerProvider()
    assert provider.tau_table(4) == [0, 1, -24, 252]
    assert provider.tau(200) == delta_series(201)[200]


def test_default_provider_can_be_replaced():
    replacement = DeltaPowerProvider()
    set_default_provider(replacement)
    try:
        assert default_provider() is replacement
    finally:
        set_default_provider(None)
    assert default_provider() is not replacement


def test_provider_drops_covered_tables():
    provider = DeltaPowerProvider()
    ring = CoeffRing.mod(3)
    for d in range(2, 30):
        provider.power(d - 1, d + 1, ring)
    assert provider.get_cache_stats()["tables"] == 1

    provider.power(50, 60, ring)
    provider.power(2, 200, ring)
    # neither table covers the other
    assert provider.get_cache_stats()["tables"] == 2
    provider.power(60, 300, ring)
    assert provider.get_cache_stats()["tables"] == 1
    assert provider.power(50, 60, ring) == delta_series(60, ring) ** 50


def test_provider_keeps_tables_per_ring():
    provider = DeltaPowerProvider()
    provider.power(3, 20, CoeffRing.mod(3))
    provider.power(3, 10, CoeffRing.mod(16))
    assert provider.get_cache_stats()["tables"] == 2
