import numpy as np
import pytest
from math import comb

from spincorr.basis import (BasisConfig, NeelKind, config_pattern,
                            enumerate_sector, flip_range,
                            spin_flip_permutation, translation_permutation)
from spincorr.errors import ArgumentError


def test_sector_two_sites_one_up():
    sec = enumerate_sector(2, 1)
    assert sec.configs.tolist() == [0b01, 0b10]


def test_sector_four_sites_two_up():
    sec = enumerate_sector(4, 2)
    assert sec.dimension == 6
    assert sec.configs[0] == 0b0011
    assert sec.configs[-1] == 0b1100
    assert np.all(np.diff(sec.configs.astype(np.int64)) > 0)


def test_sector_size_matches_binomial():
    # frozen from direct arithmetic: comb(20, 10)
    assert enumerate_sector(20, 10).dimension == 184756
    assert comb(20, 10) == 184756


def test_sector_roundtrip_identity():
    sec = enumerate_sector(8, 3)
    idx = sec.index_of(sec.configs)
    assert np.array_equal(idx, np.arange(sec.dimension))


def test_sectors_partition_full_space():
    n = 9
    total = sum(enumerate_sector(n, k).dimension for k in range(n + 1))
    assert total == 2 ** n


def test_sector_popcounts():
    sec = enumerate_sector(10, 4)
    assert all(int(c).bit_count() == 4 for c in sec.configs)


def test_sector_argument_errors():
    with pytest.raises(ArgumentError):
        enumerate_sector(25, 2)
    with pytest.raises(ArgumentError):
        enumerate_sector(6, 7)
    with pytest.raises(ArgumentError):
        enumerate_sector(6, -1)


def test_index_of_rejects_foreign_bitmask():
    sec = enumerate_sector(4, 2)
    with pytest.raises(ArgumentError):
        sec.index_of(0b0001)


def test_neel_patterns():
    assert config_pattern(NeelKind.ODD_UP, 4).bits == 0b0101
    assert config_pattern(NeelKind.EVEN_UP, 4).bits == 0b1010
    assert config_pattern(NeelKind.ODD_UP, 6).bits == 0b010101
    with pytest.raises(ArgumentError):
        config_pattern(NeelKind.ODD_UP, 5)


def test_neel_site_reading():
    c = config_pattern(NeelKind.ODD_UP, 4)
    assert c.spin_up(1) and not c.spin_up(2) and c.spin_up(3) and not c.spin_up(4)
    assert c.down_sites() == (2, 4)


def test_flip_range_examples():
    assert flip_range(BasisConfig(0b0101, 4), 1, 4).bits == 0b1010
    assert flip_range(BasisConfig(0b0000, 4), 1, 1).bits == 0b0001
    assert flip_range(BasisConfig(0b111111, 6), 3, 4).bits == 0b110011


def test_flip_range_is_involution():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(2, 13))
        bits = int(rng.integers(0, 1 << n))
        first = int(rng.integers(1, n + 1))
        last = int(rng.integers(first, n + 1))
        c = BasisConfig(bits, n)
        assert flip_range(flip_range(c, first, last), first, last) == c


def test_flip_range_bad_sites():
    with pytest.raises(ArgumentError):
        flip_range(BasisConfig(0, 4), 0, 2)
    with pytest.raises(ArgumentError):
        flip_range(BasisConfig(0, 4), 3, 2)


def test_basis_config_validation():
    with pytest.raises(ArgumentError):
        BasisConfig(0b10000, 4)
    with pytest.raises(ArgumentError):
        BasisConfig(0, 1)


def test_spin_flip_permutation_is_complement():
    perm = spin_flip_permutation(3)
    assert perm.tolist() == [7, 6, 5, 4, 3, 2, 1, 0]


def test_translation_permutation_full_space():
    n = 4
    perm = translation_permutation(n)
    v = np.zeros(16)
    v[0b0001] = 1.0  # up on site 1
    shifted = v[perm]
    assert shifted[0b0010] == 1.0  # moved to site 2
    assert shifted.sum() == 1.0


def test_translation_permutation_sector_order_n():
    n = 6
    sec = enumerate_sector(n, 3)
    perm = translation_permutation(n, sec)
    v = np.arange(sec.dimension, dtype=float)
    out = v.copy()
    for _ in range(n):
        out = out[perm]
    assert np.array_equal(out, v)
