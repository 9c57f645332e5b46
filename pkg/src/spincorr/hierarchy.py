"""Entanglement and non-locality bound ladders for the correlator E_N.

Every block of spins contributes an independent factor to the best achievable
E_N.  An internally entangled (or non-locally correlated) block of any size
contributes at most 1/4 (the density-matrix bound); a single separable spin
also contributes at most 1/4; a classical (LHV) block of r spins contributes
at most 2^-r.  Maximizing the product over all partitions with quantum blocks
of size at most k gives closed-form ladders:

    entanglement:  4^(-ceil(n/k))
    non-locality:  2^-n                      for k = 1,
                   2^-(2 floor(n/k) + min(n mod k, 2))   for k >= 2.

certify() inverts the ladders: given a measured E value it reports the
smallest block size able to explain it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import ceil

from .errors import ArgumentError

THRESHOLD_TOL = 1e-12  # absolute tolerance of comparisons against ladder values
FINE_LADDER_MAX = 10   # exhaustive partition enumeration cap


class BlockKind(enum.Enum):
    QUANTUM = "quantum"      # internally entangled / non-locally correlated
    CLASSICAL = "classical"  # product spin or LHV-correlated group


class Mode(enum.Enum):
    ENTANGLEMENT = "entanglement"
    LOCALITY = "locality"


@dataclass(frozen=True)
class Partition:
    """Disjoint blocks covering sites 1..n, each quantum or classical."""

    blocks: tuple[frozenset[int], ...]
    flags: tuple[BlockKind, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.flags):
            raise ArgumentError("one flag per block required")
        sites = [s for b in self.blocks for s in b]
        n = len(sites)
        if len(set(sites)) != n or set(sites) != set(range(1, n + 1)):
            raise ArgumentError("blocks must be disjoint and cover sites 1..n")

    @property
    def n_sites(self) -> int:
        return sum(len(b) for b in self.blocks)


def entanglement_bound(n: int, k: int) -> float:
    """Largest E_n of a state whose entangled blocks have at most k spins."""
    _check_nk(n, k)
    return 4.0 ** (-ceil(n / k))


def nonlocality_bound(n: int, k: int) -> float:
    """Largest E_n when non-local correlations span at most k spins.

    Note nonlocality_bound(n, 2) == nonlocality_bound(n, 1): a non-local pair
    contributes 1/4 = 2^-2, no more than two LHV spins, so pairs cannot beat
    the full LHV bound.
    """
    _check_nk(n, k)
    if k == 1:
        return 2.0 ** (-n)
    q, r = divmod(n, k)
    return 2.0 ** (-(2 * q + min(r, 2)))


def partition_bound(p: Partition, mode: Mode) -> float:
    """Best E_n over states with the correlation structure of ``p``."""
    if mode is Mode.ENTANGLEMENT:
        for block, flag in zip(p.blocks, p.flags):
            if flag is BlockKind.CLASSICAL and len(block) != 1:
                raise ArgumentError("classical blocks must be single spins in "
                                    "entanglement mode")
        return 0.25 ** len(p.blocks)
    value = 1.0
    for block, flag in zip(p.blocks, p.flags):
        value *= 0.25 if flag is BlockKind.QUANTUM else 2.0 ** (-len(block))
    return value


@dataclass(frozen=True)
class DepthCertificate:
    """Minimal block sizes consistent with a measured E value.

    A depth of None means the value exceeds the universal bound 1/4 and no
    quantum state explains it.  The fine ladders list every distinct
    partition-bound value (with a representative block shape) for n <= 10.
    """

    e_value: float
    n_sites: int
    ent_depth: int | None
    nl_depth: int | None
    ent_ladder: tuple[tuple[int, float], ...]
    nl_ladder: tuple[tuple[int, float], ...]
    ent_fine: tuple[tuple[float, str], ...] = ()
    nl_fine: tuple[tuple[float, str], ...] = ()

    @property
    def unexplainable(self) -> bool:
        return self.ent_depth is None


def certify(e_value: float, n: int) -> DepthCertificate:
    """Locate ``e_value`` within both ladders of an n-site chain."""
    if e_value < 0:
        raise ArgumentError(f"E value must be non-negative, got {e_value}")
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    ent = tuple((k, entanglement_bound(n, k)) for k in range(1, n + 1))
    nl = tuple((k, nonlocality_bound(n, k)) for k in range(1, n + 1))
    if e_value > 0.25 + THRESHOLD_TOL:
        ent_depth = nl_depth = None
    else:
        ent_depth = next(k for k, thr in ent if e_value <= thr + THRESHOLD_TOL)
        nl_depth = next(k for k, thr in nl if e_value <= thr + THRESHOLD_TOL)
    fine_e = fine_ladder(n, Mode.ENTANGLEMENT) if n <= FINE_LADDER_MAX else ()
    fine_l = fine_ladder(n, Mode.LOCALITY) if n <= FINE_LADDER_MAX else ()
    return DepthCertificate(e_value, n, ent_depth, nl_depth, ent, nl,
                            tuple(fine_e), tuple(fine_l))


def fine_ladder(n: int, mode: Mode) -> list[tuple[float, str]]:
    """Every distinct partition-bound value with a representative shape.

    Shapes are block-size strings like "2x2x1x1"; in locality mode quantum
    blocks are bracketed, e.g. "[3]x1x1x1".
    """
    if n > FINE_LADDER_MAX:
        raise ArgumentError(f"exhaustive enumeration capped at n <= {FINE_LADDER_MAX}")
    # Representative of each value: the shape with the smallest largest block,
    # i.e. the most classical structure still reaching that bound.
    best: dict[float, tuple[int, str]] = {}

    def record(value: float, max_block: int, label: str):
        if value not in best or max_block < best[value][0]:
            best[value] = (max_block, label)

    if mode is Mode.ENTANGLEMENT:
        for parts in _int_partitions(n):
            record(0.25 ** len(parts), parts[0], "x".join(map(str, parts)))
    else:
        for parts in _int_partitions(n):
            for q_pattern in _flag_patterns(len(parts)):
                value = 1.0
                labels = []
                max_q = 1
                for size, q in zip(parts, q_pattern):
                    value *= 0.25 if q else 2.0 ** (-size)
                    labels.append(f"[{size}]" if q else str(size))
                    if q:
                        max_q = max(max_q, size)
                record(value, max_q, "x".join(labels))
    return sorted((value, label) for value, (_, label) in best.items())


def max_partition_bound(n: int, k: int, mode: Mode) -> float:
    """Exhaustive-enumeration oracle for the closed-form ladders (n <= 10)."""
    if n > FINE_LADDER_MAX:
        raise ArgumentError(f"exhaustive enumeration capped at n <= {FINE_LADDER_MAX}")
    _check_nk(n, k)
    best = 0.0
    if mode is Mode.ENTANGLEMENT:
        for parts in _int_partitions(n, max_part=k):
            best = max(best, 0.25 ** len(parts))
        return best
    for parts in _int_partitions(n):
        for q_pattern in _flag_patterns(len(parts)):
            if any(q and size > k for size, q in zip(parts, q_pattern)):
                continue
            value = 1.0
            for size, q in zip(parts, q_pattern):
                value *= 0.25 if q else 2.0 ** (-size)
            best = max(best, value)
    return best


def _int_partitions(n: int, max_part: int | None = None):
    """Integer partitions of n as non-increasing tuples."""
    first = min(n, max_part) if max_part else n

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest

    yield from rec(n, first)


def _flag_patterns(n_parts: int):
    """All quantum/classical assignments over the parts of one partition."""
    for bits in range(1 << n_parts):
        yield tuple(bool((bits >> i) & 1) for i in range(n_parts))


def _check_nk(n: int, k: int):
    if not 1 <= k <= n:
        raise ArgumentError(f"need 1 <= k <= n, got k={k}, n={n}")
