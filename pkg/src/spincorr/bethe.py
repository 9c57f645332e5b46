"""Bethe-Ansatz ground state of the gapless XXZ ring and its correlators.

Conventions (every one of them cross-validated against exact diagonalization;
see the test suite):

* anisotropy map     eta = arccos(-delta)/2, eta in (0, pi/2), |delta| < 1
* momentum           p(lambda)  = 2 arctan(tan(eta) tanh(lambda))
* scattering phase   th(lambda) = 2 arctan(tanh(lambda) / tan(2 eta))
* kernels            K1 = dp/dlambda, K2 = dth/dlambda
* root equations     N p(l_j) = 2 pi I_j - sum_k th(l_j - l_k),
                     I_j = -(M+1)/2 + j,  j = 1..M,  M = N/2
* norm matrix        G_jk = delta_jk (N K1(l_j) + sum_m K2(l_j - l_m))
                            - K2(l_j - l_k)
                     (the Newton Jacobian of the root equations), with
                     |N_M|^2 = det G / prod_j K1(l_j)
* amplitudes         chi(m_1..m_M) = (1/|N_M|) sum_{perm} sign(perm)
                         exp(-i sum_j m_j p(l_perm_j))
                         exp(-(i/2) sum_{k>j} th(l_perm_k - l_perm_j))
                     evaluated on ascending site positions.

The amplitudes live in a staggered frame: multiplying chi by (-1)^(sum m_j)
maps them onto the amplitudes of the actual ground state of the XXZ operator
at the same delta (reconstruct_vector does this).  The correlators E_N and
E_{N-2} are insensitive to that frame factor, so they are plain products of
the chi values:

    E_N     = |chi(odd sites)|^2 |chi(even sites)|^2
    E_{N-2} = |chi*(O, N) chi(E, N) + chi*(O, N-1) chi(E, N-1)|^2

with O/E the odd/even down-spin positions of the length-(N-2) window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .basis import enumerate_sector
from .eigensolver import PureState
from .errors import ArgumentError, CapacityError, ConvergenceError

MAX_AMPLITUDE_DOWNS = 7       # permutation sum capped at 7! = 5040 terms
CONTINUATION_STEP = 0.05      # initial step of the anisotropy continuation
CONTINUATION_FLOOR = 1e-4
ROOT_RESIDUAL_TARGET = 1e-13


def eta_from_delta(delta: float) -> float:
    if not -1.0 < delta < 1.0:
        raise ArgumentError(f"gapless phase requires |delta| < 1, got {delta}")
    return 0.5 * float(np.arccos(-delta))


def momentum(lam, eta: float):
    return 2.0 * np.arctan(np.tan(eta) * np.tanh(lam))


def scattering_phase(lam, eta: float):
    return 2.0 * np.arctan(np.tanh(lam) / np.tan(2.0 * eta))


def k1_kernel(lam, eta: float):
    return 2.0 * np.sin(2.0 * eta) / (np.cosh(2.0 * lam) + np.cos(2.0 * eta))


def k2_kernel(lam, eta: float):
    return 2.0 * np.sin(4.0 * eta) / (np.cosh(2.0 * lam) - np.cos(4.0 * eta))


@dataclass
class BetheState:
    """Solved ground-state root data plus cached amplitude machinery."""

    n_sites: int
    m_down: int
    delta: float
    eta: float
    quantum_numbers: np.ndarray
    roots: np.ndarray
    gaudin_norm_sq: float
    _perm_p: np.ndarray = field(repr=False, default=None)
    _perm_signs: np.ndarray = field(repr=False, default=None)
    _perm_theta: np.ndarray = field(repr=False, default=None)

    def residual(self) -> float:
        return float(np.max(np.abs(_equations(self.roots, self.n_sites,
                                               self.quantum_numbers, self.eta))))


def _equations(lam: np.ndarray, n: int, qnums: np.ndarray, eta: float) -> np.ndarray:
    diff = lam[:, None] - lam[None, :]
    return (n * momentum(lam, eta) - 2.0 * np.pi * qnums
            + scattering_phase(diff, eta).sum(axis=1))


def _jacobian(lam: np.ndarray, n: int, eta: float) -> np.ndarray:
    diff = lam[:, None] - lam[None, :]
    k2 = k2_kernel(diff, eta)
    return np.diag(n * k1_kernel(lam, eta) + k2.sum(axis=1)) - k2


def _newton(lam: np.ndarray, n: int, qnums: np.ndarray, eta: float,
            max_iter: int = 60) -> np.ndarray | None:
    for _ in range(max_iter):
        f = _equations(lam, n, qnums, eta)
        if np.max(np.abs(f)) < ROOT_RESIDUAL_TARGET:
            return lam
        try:
            step = np.linalg.solve(_jacobian(lam, n, eta), f)
        except np.linalg.LinAlgError:
            return None
        lam = lam - step
        if not np.all(np.isfinite(lam)) or np.max(np.abs(lam)) > 60.0:
            return None
    return None


def solve_ground(n: int, delta: float) -> BetheState:
    """Ground-state rapidities of the n-site ring at anisotropy delta.

    Starts from the closed-form free-fermion roots at delta = 0 and walks the
    anisotropy toward the target, Newton-polishing at every step; the step is
    halved on divergence down to a floor of 1e-4.
    """
    if n % 2 or not 4 <= n <= 14:
        raise ArgumentError(f"need even n in [4, 14], got {n}")
    eta_target = eta_from_delta(delta)
    m = n // 2
    qnums = np.array([-(m + 1) / 2 + j for j in range(1, m + 1)])
    # delta = 0: the phases vanish and N p(l_j) = 2 pi I_j solves in closed form
    lam = np.arctanh(np.tan(np.pi * qnums / n))
    current = 0.0
    step = CONTINUATION_STEP
    while current != delta:
        nxt = np.clip(current + np.sign(delta - current) * step,
                      min(current, delta), max(current, delta))
        trial = _newton(lam.copy(), n, qnums, eta_from_delta(float(nxt)))
        if trial is None:
            step /= 2.0
            if step < CONTINUATION_FLOOR:
                res = float(np.max(np.abs(_equations(lam, n, qnums, eta_target))))
                raise ConvergenceError(
                    f"continuation stalled at delta={current}", residual=res)
            continue
        lam, current = trial, float(nxt)
    lam = _newton(lam, n, qnums, eta_target)
    if lam is None:
        raise ConvergenceError("final Newton polish diverged")
    norm_sq = float(np.linalg.det(_jacobian(lam, n, eta_target))
                    / np.prod(k1_kernel(lam, eta_target)))
    if norm_sq <= 0:
        raise ConvergenceError(f"non-positive state norm {norm_sq}")
    return BetheState(n, m, delta, eta_target, qnums, lam, norm_sq)


def _perm_cache(state: BetheState):
    if state._perm_p is None:
        m = state.m_down
        if m > MAX_AMPLITUDE_DOWNS:
            raise CapacityError(f"amplitude sum capped at {MAX_AMPLITUDE_DOWNS} "
                                f"down spins ({m} requested)")
        perms = np.array(list(itertools.permutations(range(m))))
        signs = np.empty(len(perms))
        theta = np.empty(len(perms))
        th = scattering_phase(state.roots[:, None] - state.roots[None, :], state.eta)
        for r, perm in enumerate(perms):
            signs[r] = _permutation_sign(perm)
            theta[r] = sum(th[perm[k], perm[j]]
                           for j in range(m) for k in range(j + 1, m))
        state._perm_p = momentum(state.roots, state.eta)[perms]
        state._perm_signs = signs
        state._perm_theta = theta
    return state._perm_p, state._perm_signs, state._perm_theta


def _permutation_sign(perm) -> float:
    seen = [False] * len(perm)
    sign = 1.0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def amplitude(state: BetheState, down_positions) -> complex:
    """Normalized wave-function amplitude of the given down-spin position set.

    Positions are 1-based sites; the input order is irrelevant (the sum is
    evaluated on the ascending arrangement).
    """
    positions = sorted(int(s) for s in down_positions)
    if len(positions) != state.m_down:
        raise ArgumentError(f"need exactly {state.m_down} down positions, "
                            f"got {len(positions)}")
    if len(set(positions)) != len(positions):
        raise ArgumentError("down positions must be distinct")
    if not (1 <= positions[0] and positions[-1] <= state.n_sites):
        raise ArgumentError(f"positions outside 1..{state.n_sites}")
    perm_p, signs, theta = _perm_cache(state)
    phase = perm_p @ np.asarray(positions, dtype=float)
    total = np.sum(signs * np.exp(-1j * phase - 0.5j * theta))
    return complex(total / np.sqrt(state.gaudin_norm_sq))


def e_n(state: BetheState) -> float:
    """Full-chain alternating correlator |chi(O_N)|^2 |chi(E_N)|^2."""
    n = state.n_sites
    odd = range(1, n, 2)
    even = range(2, n + 1, 2)
    return float(abs(amplitude(state, odd)) ** 2 * abs(amplitude(state, even)) ** 2)


def e_n_minus_2(state: BetheState) -> float:
    """Alternating correlator of the length-(N-2) window starting at site 1.

    The two tail fillings put the leftover down spin on site N or N-1:
    E_{N-2} = |chi*(O, N) chi(E, N) + chi*(O, N-1) chi(E, N-1)|^2.
    """
    n = state.n_sites
    odd = list(range(1, n - 2, 2))
    even = list(range(2, n - 1, 2))
    total = 0j
    for extra in (n, n - 1):
        total += (np.conj(amplitude(state, odd + [extra]))
                  * amplitude(state, even + [extra]))
    return float(abs(total) ** 2)


def energy(state: BetheState) -> float:
    """Eigen-energy of the reconstructed state in the XXZ operator units.

    Each root carries -cos p(lambda_j) - delta on top of the fully polarized
    reference energy N delta / 4 (the staggered frame shifts every momentum
    by pi, hence the sign of the cosine).
    """
    p = momentum(state.roots, state.eta)
    return float(state.n_sites * state.delta / 4.0
                 - np.sum(np.cos(p) + state.delta))


def reconstruct_vector(state: BetheState) -> PureState:
    """Full sector amplitude vector of the ground state at this delta.

    Evaluates the amplitude on every configuration of the zero-magnetization
    sector and maps it out of the staggered frame with the sign
    (-1)^(sum of down positions).  The result is normalized and is an
    eigenvector of hamiltonian.build(Xxz(delta), sector=N/2).
    """
    n, m = state.n_sites, state.m_down
    if comb(n, m) > 20000:
        raise CapacityError("vector reconstruction is intended for n <= 14")
    sector = enumerate_sector(n, m)
    amps = np.empty(sector.dimension, dtype=complex)
    for i, cfg in enumerate(sector.configs):
        downs = [s + 1 for s in range(n) if not (int(cfg) >> s) & 1]
        amps[i] = amplitude(state, downs) * (-1.0) ** sum(downs)
    return PureState(amps, n, sector, energy(state)).normalized()
