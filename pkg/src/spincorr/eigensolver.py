"""Ground states and spectra of the chain operators.

Small problems (dimension <= 1024 by default) go through dense LAPACK
diagonalization.  Larger ones use implicitly restarted Lanczos (ARPACK via
scipy) with a fixed, seeded pseudo-random start vector so repeated runs are
bit-identical.  Every returned eigenpair is verified against an explicit
residual bound ||H v - E v|| <= tol * norm_bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg as spla

from .basis import SectorIndex
from .errors import ArgumentError, CapacityError, ConvergenceError
from .hamiltonian import DENSE_CAP, LinearOperator, dense_matrix

START_SEED = 987654321   # seed of the Lanczos start vector, recorded in run manifests
DEGENERACY_GAP = 1e-10   # levels closer than this are treated as one multiplet
DENSE_CUTOFF = 1024      # largest dimension diagonalized densely by ground_state


@dataclass
class PureState:
    """A normalized amplitude vector over the full space or a sector."""

    amplitudes: np.ndarray
    n_sites: int
    sector: SectorIndex | None
    energy: float
    degenerate: bool = False

    @property
    def dimension(self) -> int:
        return len(self.amplitudes)

    def normalized(self) -> "PureState":
        nrm = np.linalg.norm(self.amplitudes)
        if nrm == 0:
            raise ArgumentError("cannot normalize the zero vector")
        return PureState(self.amplitudes / nrm, self.n_sites, self.sector,
                         self.energy, self.degenerate)


@dataclass
class SpectralDecomposition:
    """Complete orthonormal eigensystem, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column n is the n-th eigenvector
    n_sites: int
    sector: SectorIndex | None

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def state(self, n: int) -> PureState:
        return PureState(self.eigenvectors[:, n], self.n_sites, self.sector,
                         float(self.eigenvalues[n]))


@dataclass
class ThermalWeights:
    """Gibbs weights w_n = exp(-beta (E_n - E_0)) / Z, in spectrum order."""

    beta: float
    weights: np.ndarray


def _start_vector(dim: int) -> np.ndarray:
    rng = np.random.default_rng(START_SEED)
    v = rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def _lowest_pairs(op: LinearOperator, tol: float, k: int,
                  initial_guess: np.ndarray | None) -> tuple[np.ndarray, np.ndarray]:
    """k lowest eigenpairs with verified residuals (ARPACK path)."""
    v0 = initial_guess if initial_guess is not None else _start_vector(op.dimension)
    lin = spla.LinearOperator((op.dimension, op.dimension), matvec=op.apply,
                              dtype=np.float64)
    arpack_tol = tol
    last_residual = np.inf
    for _ in range(4):
        vals, vecs = spla.eigsh(lin, k=k, which="SA", v0=v0,
                                tol=arpack_tol, maxiter=40 * op.dimension)
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
        res = np.linalg.norm(op.apply(vecs[:, 0]) - vals[0] * vecs[:, 0])
        if res <= tol * op.norm_bound:
            return vals, vecs
        last_residual = res
        arpack_tol /= 100.0
        v0 = vecs[:, 0]
    raise ConvergenceError(
        f"Lanczos residual {last_residual:.3e} above target "
        f"{tol * op.norm_bound:.3e}", residual=float(last_residual))


def ground_state(op: LinearOperator, tol: float = 1e-10, *,
                 initial_guess: np.ndarray | None = None,
                 detect_degeneracy: bool = True,
                 dense_cutoff: int = DENSE_CUTOFF) -> PureState:
    """Lowest eigenpair of ``op``.

    The result satisfies ||H v - E v|| <= tol * norm_bound.  When the gap to
    the next level is below 1e-10 the state is flagged degenerate: at an
    (almost) exact degeneracy the returned combination within the ground
    multiplet is arbitrary, so downstream quantities that depend on it should
    resolve the multiplet explicitly (see symmetric_combination).
    """
    if op.dimension < 2:
        raise ArgumentError("operator dimension must be at least 2")
    if not 0 < tol <= 1e-6:
        raise ArgumentError(f"tol must lie in (0, 1e-6], got {tol}")
    if op.dimension <= dense_cutoff:
        h = dense_matrix(op)
        vals, vecs = np.linalg.eigh(h)
        gap = vals[1] - vals[0]
        return PureState(np.ascontiguousarray(vecs[:, 0]), op.n_sites, op.sector,
                         float(vals[0]), degenerate=bool(gap < DEGENERACY_GAP))
    k = 2 if detect_degeneracy else 1
    vals, vecs = _lowest_pairs(op, tol, k, initial_guess)
    degenerate = bool(k == 2 and vals[1] - vals[0] < DEGENERACY_GAP)
    return PureState(np.ascontiguousarray(vecs[:, 0]), op.n_sites, op.sector,
                     float(vals[0]), degenerate=degenerate)


def ground_multiplet(op: LinearOperator, tol: float = 1e-10, *,
                     dense_cutoff: int = DENSE_CUTOFF) -> list[PureState]:
    """All states of the (near-)degenerate lowest level, gap threshold 1e-10."""
    if op.dimension <= dense_cutoff:
        h = dense_matrix(op)
        vals, vecs = np.linalg.eigh(h)
    else:
        vals, vecs = _lowest_pairs(op, tol, 2, None)
    keep = np.nonzero(vals - vals[0] < DEGENERACY_GAP)[0]
    flag = len(keep) > 1
    return [PureState(np.ascontiguousarray(vecs[:, i]), op.n_sites, op.sector,
                      float(vals[i]), degenerate=flag) for i in keep]


def symmetric_combination(states: list[PureState], permutation: np.ndarray) -> PureState:
    """Resolve a degenerate multiplet by projecting onto a symmetry sector.

    ``permutation`` is the index array of a basis permutation that commutes
    with the Hamiltonian (e.g. global spin flip, or translation within a
    sector).  The returned vector is the normalized +1-symmetric component,
    which is the deterministic, physically selected limit state; an arbitrary
    Lanczos mixture within an exactly degenerate multiplet is not.
    """
    for st in states:
        w = st.amplitudes + st.amplitudes[permutation]
        nrm = np.linalg.norm(w)
        if nrm > 1e-6:
            return PureState(w / nrm, st.n_sites, st.sector, st.energy,
                             degenerate=len(states) > 1)
    raise ConvergenceError("no symmetric component in the degenerate multiplet")


def full_spectrum(op: LinearOperator) -> SpectralDecomposition:
    """Complete orthonormal eigensystem (dense; dimension <= 4096)."""
    if op.dimension > DENSE_CAP:
        raise CapacityError(f"full spectra capped at dimension {DENSE_CAP}, "
                            f"got {op.dimension}")
    vals, vecs = np.linalg.eigh(dense_matrix(op))
    return SpectralDecomposition(vals, vecs, op.n_sites, op.sector)


def thermal_weights(spec: SpectralDecomposition, beta: float) -> ThermalWeights:
    """Gibbs weights at inverse temperature beta (k_B = 1), overflow-safe."""
    if beta < 0:
        raise ArgumentError(f"beta must be non-negative, got {beta}")
    shifted = np.exp(-beta * (spec.eigenvalues - spec.eigenvalues[0]))
    return ThermalWeights(beta, shifted / shifted.sum())
