"""Bitmask encoding of spin-1/2 product states and magnetization sectors.

A product state of N spins is an N-bit integer: bit j set means the spin on
site j+1 points up.  Sites are numbered 1..N in all user-facing interfaces
(matching the usual chain convention); bit positions are 0-based internally.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import ArgumentError

MAX_SITES = 24  # full-space vectors stay below 2^24 entries


class NeelKind(enum.Enum):
    """Which sublattice of the alternating pattern carries the up spins."""

    ODD_UP = "odd_up"    # up on sites 1, 3, 5, ...
    EVEN_UP = "even_up"  # up on sites 2, 4, 6, ...


@dataclass(frozen=True)
class BasisConfig:
    """One product configuration of ``n_sites`` spins, encoded as a bitmask."""

    bits: int
    n_sites: int

    def __post_init__(self):
        if not 2 <= self.n_sites <= MAX_SITES:
            raise ArgumentError(f"n_sites must be in [2, {MAX_SITES}], got {self.n_sites}")
        if self.bits < 0 or self.bits >> self.n_sites:
            raise ArgumentError(f"bits 0b{self.bits:b} outside the {self.n_sites}-site register")

    @property
    def n_up(self) -> int:
        return self.bits.bit_count()

    def spin_up(self, site: int) -> bool:
        """True if the spin on paper-site ``site`` (1-based) is up."""
        _check_site(site, self.n_sites)
        return bool((self.bits >> (site - 1)) & 1)

    def down_sites(self) -> tuple[int, ...]:
        """1-based positions of the down spins, ascending."""
        return tuple(s for s in range(1, self.n_sites + 1) if not self.spin_up(s))

    def __str__(self) -> str:
        # site 1 printed first
        return "".join("1" if self.spin_up(s) else "0" for s in range(1, self.n_sites + 1))


@dataclass(frozen=True)
class SectorIndex:
    """All configurations with a fixed number of up spins, sorted ascending.

    ``configs[i]`` is the bitmask of the i-th sector state; ``index_of``
    inverts the map.
    """

    n_sites: int
    n_up: int
    configs: np.ndarray  # uint32, strictly increasing

    @property
    def dimension(self) -> int:
        return len(self.configs)

    def index_of(self, bits):
        """Position(s) of bitmask(s) within the sector (vectorized)."""
        idx = np.searchsorted(self.configs, bits)
        if np.any(self.configs[np.minimum(idx, self.dimension - 1)] != bits):
            raise ArgumentError("bitmask not in sector")
        return idx


def enumerate_sector(n_sites: int, n_up: int) -> SectorIndex:
    """Enumerate the binomial(n_sites, n_up) configurations with n_up up spins.

    n_sites = 0 is allowed and yields the single empty configuration; this is
    what makes window-plus-tail decompositions uniform in the correlator code.
    """
    if not 0 <= n_sites <= MAX_SITES:
        raise ArgumentError(f"n_sites must be in [0, {MAX_SITES}], got {n_sites}")
    if not 0 <= n_up <= n_sites:
        raise ArgumentError(f"n_up must be in [0, {n_sites}], got {n_up}")
    size = comb(n_sites, n_up)
    configs = np.empty(size, dtype=np.uint32)
    if n_up == 0:
        configs[0] = 0
        return SectorIndex(n_sites, n_up, configs)
    # Gosper's hack: next integer with the same popcount, ascending order.
    v = (1 << n_up) - 1
    for i in range(size):
        configs[i] = v
        c = v & -v
        r = v + c
        v = (((r ^ v) >> 2) // c) | r
    return SectorIndex(n_sites, n_up, configs)


def config_pattern(kind: NeelKind, n_sites: int) -> BasisConfig:
    """The alternating (Neel) configuration of an even-length chain."""
    if n_sites % 2:
        raise ArgumentError(f"alternating pattern needs even n_sites, got {n_sites}")
    odd_mask = sum(1 << j for j in range(0, n_sites, 2))  # sites 1,3,... -> bits 0,2,...
    bits = odd_mask if kind is NeelKind.ODD_UP else odd_mask ^ ((1 << n_sites) - 1)
    return BasisConfig(bits, n_sites)


def flip_range(c: BasisConfig, first: int, last: int) -> BasisConfig:
    """Invert the spins on paper-sites first..last (inclusive, 1-based)."""
    _check_site(first, c.n_sites)
    _check_site(last, c.n_sites)
    if first > last:
        raise ArgumentError(f"need first <= last, got {first} > {last}")
    mask = ((1 << (last - first + 1)) - 1) << (first - 1)
    return BasisConfig(c.bits ^ mask, c.n_sites)


def _check_site(site: int, n_sites: int):
    if not 1 <= site <= n_sites:
        raise ArgumentError(f"site {site} outside 1..{n_sites}")


def spin_flip_permutation(n_sites: int) -> np.ndarray:
    """Index permutation of the global spin flip on the full 2^N space.

    Flipping every spin maps bitmask a to its N-bit complement, so the
    permutation is simply the reversed index range.
    """
    return np.arange((1 << n_sites) - 1, -1, -1, dtype=np.intp)


def translation_permutation(n_sites: int, sector: SectorIndex | None = None) -> np.ndarray:
    """Index permutation of the one-site translation (periodic chains).

    Entry i holds the position whose amplitude moves to slot i, so
    ``psi[perm]`` is the translated vector.
    """
    if sector is None:
        idx = np.arange(1 << n_sites, dtype=np.int64)
    else:
        idx = sector.configs.astype(np.int64)
    mask = (1 << n_sites) - 1
    rotated_back = ((idx >> 1) | (idx << (n_sites - 1))) & mask
    if sector is None:
        return rotated_back.astype(np.intp)
    return np.asarray(sector.index_of(rotated_back), dtype=np.intp)
