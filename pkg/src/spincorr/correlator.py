"""Formation-probability correlators.

For a window of m consecutive sites carrying raising/lowering operators, the
correlator is the density-matrix element

    C_m = < prod_k sigma_{+-}^(k) > = sum_tail psi*(target + tail) psi(source + tail)

where ``source`` carries a down spin under every raising operator and an up
spin under every lowering one, ``target`` is the window-flipped configuration,
and the tail runs over the remaining N - m sites.  E_m = |C_m|^2 is bounded by
1/4 for any state.  For m = N there is no tail and C_N is a single
density-matrix element.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field

import numpy as np

from .basis import enumerate_sector
from .eigensolver import PureState, SpectralDecomposition, ThermalWeights
from .errors import ArgumentError, CapacityError

BEST_PATTERN_CAP = 12  # brute-force pattern search is a diagnostic, not a hot path


class SpinOp(enum.Enum):
    RAISE = "+"
    LOWER = "-"


@dataclass(frozen=True)
class SignPattern:
    """Sequence of raising/lowering operators on consecutive sites."""

    ops: tuple[SpinOp, ...]
    start_site: int = 1

    def __post_init__(self):
        if len(self.ops) < 1:
            raise ArgumentError("pattern needs at least one operator")
        if self.start_site < 1:
            raise ArgumentError(f"start_site must be >= 1, got {self.start_site}")

    @property
    def order(self) -> int:
        return len(self.ops)

    def __str__(self) -> str:
        return "".join(op.value for op in self.ops)


def alternating(m: int, start_site: int = 1, first: SpinOp = SpinOp.RAISE) -> SignPattern:
    """The antiferromagnetic choice sigma_+ sigma_- sigma_+ ... of length m."""
    other = SpinOp.LOWER if first is SpinOp.RAISE else SpinOp.RAISE
    return SignPattern(tuple(first if i % 2 == 0 else other for i in range(m)), start_site)


def uniform(m: int, op: SpinOp = SpinOp.RAISE, start_site: int = 1) -> SignPattern:
    return SignPattern((op,) * m, start_site)


@dataclass(frozen=True)
class CorrelatorResult:
    c_value: complex
    order_m: int
    pattern: SignPattern
    e_value: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "e_value", float(abs(self.c_value) ** 2))


def _window_positions(state_n_sites: int, sector, pattern: SignPattern):
    """Index pairs (target, source) of every window-plus-tail configuration.

    Returns None when the correlator vanishes identically (unbalanced pattern
    on a fixed-magnetization sector, or an impossible tail filling).
    """
    m, s = pattern.order, pattern.start_site
    n = state_n_sites
    if s + m - 1 > n:
        raise ArgumentError(f"pattern of order {m} starting at site {s} "
                            f"does not fit an {n}-site chain")
    lo_bits = s - 1                       # sites below the window
    wmask = ((1 << m) - 1) << lo_bits
    source_w = 0
    for i, op in enumerate(pattern.ops):  # RAISE acts on a down spin
        if op is SpinOp.LOWER:
            source_w |= 1 << (lo_bits + i)
    target_w = source_w ^ wmask

    n_tail = n - m
    if sector is None:
        tails = np.arange(1 << n_tail, dtype=np.int64)
    else:
        up_src = sum(op is SpinOp.LOWER for op in pattern.ops)
        up_tgt = m - up_src
        if up_src != up_tgt:
            return None
        tail_up = sector.n_up - up_src
        if not 0 <= tail_up <= n_tail:
            return None
        tails = enumerate_sector(n_tail, tail_up).configs.astype(np.int64)
    low = tails & ((1 << lo_bits) - 1)
    high = (tails >> lo_bits) << (lo_bits + m)
    src_cfg = low | high | source_w
    tgt_cfg = src_cfg ^ wmask
    if sector is None:
        return tgt_cfg, src_cfg
    return sector.index_of(tgt_cfg), sector.index_of(src_cfg)


def pure_correlator(state: PureState, pattern: SignPattern) -> CorrelatorResult:
    """C_m and E_m = |C_m|^2 on a pure state."""
    psi = state.amplitudes
    nrm = np.linalg.norm(psi)
    if abs(nrm - 1.0) > 1e-9:
        raise ArgumentError(f"state norm {nrm} is not 1")
    pos = _window_positions(state.n_sites, state.sector, pattern)
    if pos is None:
        return CorrelatorResult(0j, pattern.order, pattern)
    tgt, src = pos
    c = np.vdot(psi[tgt], psi[src])
    return CorrelatorResult(complex(c), pattern.order, pattern)


def thermal_correlator(spec: SpectralDecomposition, w: ThermalWeights,
                       pattern: SignPattern) -> CorrelatorResult:
    """Gibbs-averaged correlator C_m = sum_n w_n <psi_n| A_m |psi_n>.

    The per-level matrix elements enter with their signs; levels whose
    expectation value is negative reduce the average.
    """
    if len(w.weights) != spec.dimension:
        raise ArgumentError("thermal weights do not match the spectrum")
    pos = _window_positions(spec.n_sites, spec.sector, pattern)
    if pos is None:
        return CorrelatorResult(0j, pattern.order, pattern)
    tgt, src = pos
    per_level = np.einsum("tn,tn->n", spec.eigenvectors[tgt, :].conj(),
                          spec.eigenvectors[src, :])
    c = np.dot(w.weights, per_level)
    return CorrelatorResult(complex(c), pattern.order, pattern)


def best_pattern(state: PureState, m: int) -> SignPattern:
    """Exhaustive search for the sign pattern maximizing E_m at start_site 1.

    Ties resolve to the lexicographically first pattern (RAISE < LOWER), so a
    coherence-free state yields the all-RAISE pattern.
    """
    if m > state.n_sites:
        raise ArgumentError(f"m={m} exceeds the chain length {state.n_sites}")
    if m > BEST_PATTERN_CAP:
        raise CapacityError(f"pattern search capped at m <= {BEST_PATTERN_CAP}")
    best = None
    best_e = -1.0
    for ops in itertools.product((SpinOp.RAISE, SpinOp.LOWER), repeat=m):
        pat = SignPattern(ops)
        e = pure_correlator(state, pat).e_value
        if e > best_e:
            best, best_e = pat, e
    return best
