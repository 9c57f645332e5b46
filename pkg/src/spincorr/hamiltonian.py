"""Matrix-free spin-chain Hamiltonians.

Models
------
Ising(g, k_next)   open chain,   H = sum_j sz_j sz_{j+1} + g sum_j sx_j
                                     + k_next sum_j sz_j sz_{j+2}
                   with Pauli matrices (eigenvalues +-1).
Xxz(delta)         periodic ring, H = (1/4) sum_j (sx sx + sy sy + delta sz sz),
                   i.e. the spin-1/2 exchange form: a neighbouring
                   antiparallel pair flip-flops with amplitude 1/2 and each
                   bond contributes delta/4 * (+-1) to the diagonal.  This
                   normalization puts the 4-site levels at
                   E_pm = (-delta +- sqrt(8 + delta^2))/2 and -delta.
MajumdarGhosh      periodic ring, H = sum_j vec(s)_j.vec(s)_{j+1}
                                      + (1/2) sum_j vec(s)_j.vec(s)_{j+2}
                   with Pauli vectors (both sums run over all N sites).

Operators act on the full 2^N space or, for magnetization-conserving models,
on a fixed n_up sector.  apply() is linear, symmetric and dtype-preserving.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .basis import MAX_SITES, SectorIndex, enumerate_sector
from .errors import ArgumentError, CapacityError

DENSE_CAP = 4096


@dataclass(frozen=True)
class Ising:
    g: float
    k_next: float = 0.0


@dataclass(frozen=True)
class Xxz:
    delta: float


@dataclass(frozen=True)
class MajumdarGhosh:
    pass


class Boundary:
    OPEN = "open"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class ChainSpec:
    """A model plus chain length; the boundary is fixed by the model."""

    model: Ising | Xxz | MajumdarGhosh
    n_sites: int
    boundary: str = field(default="")

    def __post_init__(self):
        if not 2 <= self.n_sites <= MAX_SITES:
            raise ArgumentError(f"n_sites must be in [2, {MAX_SITES}], got {self.n_sites}")
        expected = Boundary.OPEN if isinstance(self.model, Ising) else Boundary.PERIODIC
        if self.boundary == "":
            object.__setattr__(self, "boundary", expected)
        elif self.boundary != expected:
            raise ArgumentError(
                f"{type(self.model).__name__} requires {expected} boundary, got {self.boundary}")
        if isinstance(self.model, MajumdarGhosh) and self.n_sites % 2:
            raise ArgumentError("Majumdar-Ghosh chain needs an even number of sites")

    @property
    def conserves_magnetization(self) -> bool:
        return not isinstance(self.model, Ising)


class LinearOperator:
    """Hermitian operator given by its action on amplitude vectors.

    The couplings are generated from bit operations on the fly; nothing of
    size dimension^2 is ever stored.
    """

    def __init__(self, spec: ChainSpec, sector: SectorIndex | None,
                 diag: np.ndarray, bonds: list[tuple[float, np.ndarray, np.ndarray]],
                 flip_amp: float, norm_bound: float):
        self.spec = spec
        self.sector = sector
        self.n_sites = spec.n_sites
        self.dimension = len(diag)
        self.conserves_magnetization = spec.conserves_magnetization
        self.norm_bound = norm_bound
        self._diag = diag
        self._bonds = bonds        # (amplitude, src positions, dst positions) per bond
        self._flip_amp = flip_amp  # transverse-field amplitude (Ising only)

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Return H @ v (1-D vector of length dimension)."""
        if v.shape != (self.dimension,):
            raise ArgumentError(f"vector length {v.shape} != dimension {self.dimension}")
        out = self._diag * v
        if self._flip_amp:
            gv = self._flip_amp * v
            for j in range(self.n_sites):
                # out[a ^ 2^j] += g * v[a], as a strided in-place add
                out.reshape(-1, 2, 1 << j)[:, ::-1, :] += gv.reshape(-1, 2, 1 << j)
        for amp, src, dst in self._bonds:
            out[dst] = out[dst] + amp * v[src]
        return out

    # scipy.sparse.linalg compatibility
    @property
    def shape(self):
        return (self.dimension, self.dimension)

    @property
    def dtype(self):
        return np.dtype(np.float64)

    def matvec(self, v):
        return self.apply(np.ascontiguousarray(v.reshape(self.dimension)))


def build(spec: ChainSpec, sector: int | None = None) -> LinearOperator:
    """Assemble the operator for ``spec``, optionally restricted to n_up = sector."""
    n = spec.n_sites
    model = spec.model
    if sector is not None:
        if not spec.conserves_magnetization:
            raise ArgumentError("magnetization sector requested for the Ising model "
                                "(the transverse field breaks conservation)")
        idx = enumerate_sector(n, sector)
        configs = idx.configs.astype(np.int64)
    else:
        idx = None
        configs = np.arange(1 << n, dtype=np.int64)

    def zbond(j: int, k: int) -> np.ndarray:
        # +1 where bits j and k agree, -1 otherwise
        anti = ((configs >> j) ^ (configs >> k)) & 1
        return 1.0 - 2.0 * anti

    if isinstance(model, Ising):
        diag = np.zeros(len(configs))
        for j in range(n - 1):
            diag += zbond(j, j + 1)
        if model.k_next:
            for j in range(n - 2):
                diag += model.k_next * zbond(j, j + 2)
        norm = (n - 1) + abs(model.g) * n + abs(model.k_next) * max(n - 2, 0)
        return LinearOperator(spec, idx, diag, [], float(model.g), norm)

    if isinstance(model, Xxz):
        pairs = [(j, (j + 1) % n) for j in range(n)]
        diag_w, flip_w = [0.25 * model.delta], [0.5]
        weights = [0] * n
        norm = n * (2.0 + abs(model.delta)) / 4.0
    else:  # MajumdarGhosh
        pairs = [(j, (j + 1) % n) for j in range(n)] + [(j, (j + 2) % n) for j in range(n)]
        diag_w, flip_w = [1.0, 0.5], [2.0, 1.0]
        weights = [0] * n + [1] * n
        norm = n * 3.0 + n * 1.5

    diag = np.zeros(len(configs))
    bonds = []
    for (j, k), w in zip(pairs, weights):
        diag += diag_w[w] * zbond(j, k)
        mask = (1 << j) | (1 << k)
        anti = (((configs >> j) ^ (configs >> k)) & 1).astype(bool)
        src = np.nonzero(anti)[0]
        flipped = configs[src] ^ mask
        dst = idx.index_of(flipped) if idx is not None else flipped
        bonds.append((flip_w[w], src.astype(np.intp), np.asarray(dst, dtype=np.intp)))
    return LinearOperator(spec, idx, diag, bonds, 0.0, norm)


def dense_matrix(op: LinearOperator) -> np.ndarray:
    """Explicit matrix with entry (i, j) = <e_i | H e_j>; exactly symmetric."""
    if op.dimension > DENSE_CAP:
        raise CapacityError(f"dense matrix capped at dimension {DENSE_CAP}, "
                            f"got {op.dimension}")
    h = np.empty((op.dimension, op.dimension))
    e = np.zeros(op.dimension)
    for j in range(op.dimension):
        e[j] = 1.0
        h[:, j] = op.apply(e)
        e[j] = 0.0
    return h
