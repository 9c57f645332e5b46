"""Analytic reference values for the 4-site XXZ ring and the Majumdar-Ghosh chain.

These closed forms are the independent yardstick against which the exact
diagonalization pipeline is validated, and vice versa.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import ArgumentError


@dataclass(frozen=True)
class Xxz4Levels:
    """The three 4-site XXZ levels with non-zero alternating correlator.

    Energies are in the units where the ring Hamiltonian is the spin-1/2
    exchange form (see hamiltonian.Xxz); the ground state is |E_-> for
    delta > -1.  ``m_minus``/``m_plus``/``m_delta`` are the signed diagonal
    matrix elements of the alternating 4-site operator on those levels.
    """

    delta: float
    e_minus: float
    e_plus: float
    e_delta_level: float
    m_minus: float
    m_plus: float
    m_delta: float


def xxz4_levels(delta: float) -> Xxz4Levels:
    root = sqrt(8.0 + delta * delta)
    return Xxz4Levels(
        delta=delta,
        e_minus=0.5 * (-delta - root),
        e_plus=0.5 * (-delta + root),
        e_delta_level=-delta,
        m_minus=0.25 * (1.0 + delta / root),
        m_plus=0.25 * (1.0 - delta / root),
        m_delta=-0.5,
    )


def xxz4_spectrum(delta: float) -> tuple[np.ndarray, np.ndarray]:
    """All 16 levels of the 4-site ring and their correlator matrix elements.

    Besides the three levels above, the spectrum holds the fully polarized
    pair at +delta, the one-magnon bands at +-1 (twice each) and seven zero
    modes; all of those have vanishing alternating correlator.
    """
    lv = xxz4_levels(delta)
    energies = np.array([lv.e_minus, lv.e_plus, -delta]
                        + [1.0, 1.0, -1.0, -1.0] + [0.0] * 7 + [delta, delta])
    elements = np.zeros(16)
    elements[:3] = [lv.m_minus, lv.m_plus, lv.m_delta]
    return energies, elements


def xxz4_thermal(delta: float, beta: float, verbatim: bool = False) -> float:
    """Thermal E_4 of the 4-site ring at inverse temperature beta.

    The default path reconstructs the Gibbs average from the full 16-level
    spectrum with the signed matrix elements; this is the expression the
    exact-diagonalization thermal oracle reproduces to machine precision.
    ``verbatim=True`` evaluates the published transcription instead, whose
    excited-level exponents disagree with the spectrum reconstruction at
    intermediate beta (the two coincide at beta = 0 and beta -> infinity);
    it is kept only for comparison.
    """
    if beta < 0:
        raise ArgumentError(f"beta must be non-negative, got {beta}")
    lv = xxz4_levels(delta)
    root = sqrt(8.0 + delta * delta)
    energies, elements = xxz4_spectrum(delta)
    boltz = np.exp(-beta * (energies - lv.e_minus))
    z = boltz.sum()
    if verbatim:
        bracket = (-0.5 * np.exp(-beta * (delta + root))
                   + lv.m_minus
                   + lv.m_plus * np.exp(-2.0 * beta * root))
        return float((bracket / z) ** 2)
    return float((np.dot(boltz, elements) / z) ** 2)


def xxz4_zero_T(delta: float) -> float:
    """Ground-state E_4 of the 4-site ring: (1/16)(1 + delta/sqrt(8+delta^2))^2."""
    if delta <= -1:
        raise ArgumentError("ground state is |E_-> only for delta > -1")
    return (1.0 + delta / sqrt(8.0 + delta * delta)) ** 2 / 16.0


@dataclass(frozen=True)
class MgGroundState:
    """Dimer-superposition ground state data of the N-site Majumdar-Ghosh ring."""

    n_sites: int
    norm_sq: float  # squared norm of the (unnormalized) sum of the two dimer states


def mg_ground(n: int) -> MgGroundState:
    # overlap of the two dimer coverings is (-1)^(n/2) 2^(1-n/2)
    _check_mg_n(n)
    sign = -1.0 if (n // 2) % 2 else 1.0
    return MgGroundState(n, 2.0 ** (-n / 2 + 2) * (2.0 ** (n / 2 - 1) + sign))


def mg_e_n(n: int) -> float:
    """Full-chain alternating correlator of the Majumdar-Ghosh ground state.

    Non-zero only when n/2 is even; for odd n/2 the two dimer coverings
    contribute with opposite signs and the correlator vanishes exactly.
    """
    _check_mg_n(n)
    if (n // 2) % 2:
        return 0.0
    return 1.0 / (1.0 + 2.0 ** (n / 2 - 1)) ** 2


def mg_e_n_minus_2(n: int) -> float:
    """Alternating correlator of order n-2 on the n-site Majumdar-Ghosh ring.

    For n/2 even this equals E_n, not a quarter of it: on top of the two
    diagonal dimer contributions (-1/2)^(n/2-1) and 0, the two off-diagonal
    ones add -(1/2)^(n/2) each, which doubles the total to
    <A_{n-2}> = -1/(1 + 2^(n/2-1)).  For n/2 odd everything cancels and the
    correlator vanishes, as it does at full order.
    """
    _check_mg_n(n)
    if (n // 2) % 2:
        return 0.0
    return 1.0 / (1.0 + 2.0 ** (n / 2 - 1)) ** 2


def _check_mg_n(n: int):
    if n < 4 or n % 2:
        raise ArgumentError(f"Majumdar-Ghosh chain needs even n >= 4, got {n}")
