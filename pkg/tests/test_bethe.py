import numpy as np
import pytest

from spincorr.bethe import (amplitude, e_n, e_n_minus_2, energy, eta_from_delta,
                            k1_kernel, k2_kernel, momentum, reconstruct_vector,
                            scattering_phase, solve_ground)
from spincorr.closedform import xxz4_zero_T
from spincorr.correlator import alternating, pure_correlator
from spincorr.eigensolver import ground_state
from spincorr.errors import ArgumentError
from spincorr.hamiltonian import ChainSpec, Xxz, build


def test_free_fermion_point_closed_form_roots():
    st = solve_ground(4, 0.0)
    assert st.m_down == 2
    assert np.allclose(st.quantum_numbers, [-0.5, 0.5])
    lam0 = np.arctanh(np.tan(np.pi / 8))
    assert np.allclose(np.sort(st.roots), [-lam0, lam0], atol=1e-13)
    # scattering phase vanishes at the free-fermion point
    assert abs(scattering_phase(0.37, st.eta)) < 1e-14


def test_roots_are_real_distinct_symmetric():
    for n, delta in ((6, 0.5), (10, -0.7), (12, 0.9)):
        st = solve_ground(n, delta)
        assert np.all(np.isreal(st.roots))
        assert len(np.unique(np.round(st.roots, 10))) == st.m_down
        assert np.sum(st.roots) == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(np.sort(st.roots), -np.sort(st.roots)[::-1], atol=1e-12)


def test_bethe_equation_residual():
    for delta in (-0.9, -0.3, 0.0, 0.4, 0.9):
        assert solve_ground(8, delta).residual() <= 1e-12


def test_kernel_identities_by_finite_differences():
    lam = np.linspace(-2.5, 2.5, 11)
    h = 1e-6
    for delta in (-0.8, -0.2, 0.3, 0.9):
        eta = eta_from_delta(delta)
        dp = (momentum(lam + h, eta) - momentum(lam - h, eta)) / (2 * h)
        dth = (scattering_phase(lam + h, eta) - scattering_phase(lam - h, eta)) / (2 * h)
        assert np.max(np.abs(dp - k1_kernel(lam, eta))) <= 1e-8
        assert np.max(np.abs(dth - k2_kernel(lam, eta))) <= 1e-8


def test_real_kernels_match_principal_branch_logs():
    # the arctan forms are the principal-branch values of the log expressions
    lam = np.linspace(-3.0, 3.0, 13)
    for delta in (-0.7, 0.2, 0.8):
        eta = eta_from_delta(delta)
        p_log = 1j * np.log(np.cosh(lam - 1j * eta) / np.cosh(lam + 1j * eta))
        th_log = 1j * np.log(np.sinh(2j * eta + lam) / np.sinh(2j * eta - lam))
        assert np.max(np.abs(p_log - momentum(lam, eta))) < 1e-12
        assert np.max(np.abs(th_log - scattering_phase(lam, eta))) < 1e-12


def test_gaudin_norm_positive_and_normalizes():
    for n, delta in ((6, 0.6), (8, -0.5), (10, 0.9)):
        st = solve_ground(n, delta)
        assert st.gaudin_norm_sq > 0
        vec = reconstruct_vector(st)
        # reconstruct_vector re-normalizes defensively; verify it was unit already
        raw = [amplitude(st, [s + 1 for s in range(n) if not (int(c) >> s) & 1])
               for c in vec.sector.configs]
        assert np.linalg.norm(raw) == pytest.approx(1.0, abs=1e-8)


def test_reconstructed_vector_is_eigenvector():
    for n, delta in ((8, 0.5), (10, -0.9)):
        st = solve_ground(n, delta)
        vec = reconstruct_vector(st)
        op = build(ChainSpec(Xxz(delta), n), sector=n // 2)
        hv = op.apply(vec.amplitudes)
        rayleigh = float(np.real(np.vdot(vec.amplitudes, hv)))
        assert np.linalg.norm(hv - rayleigh * vec.amplitudes) <= 1e-8
        assert rayleigh == pytest.approx(energy(st), abs=1e-10)


def test_energy_matches_lanczos():
    st = solve_ground(10, 0.5)
    gs = ground_state(build(ChainSpec(Xxz(0.5), 10), sector=5))
    assert energy(st) == pytest.approx(gs.energy, abs=1e-8)


def test_amplitude_permutation_invariance():
    st = solve_ground(8, 0.3)
    a = amplitude(st, (1, 4, 6, 8))
    b = amplitude(st, (8, 1, 6, 4))
    assert a == b


def test_neel_amplitudes_equal_modulus():
    st = solve_ground(8, 0.4)
    odd = abs(amplitude(st, range(1, 8, 2)))
    even = abs(amplitude(st, range(2, 9, 2)))
    assert odd == pytest.approx(even, abs=1e-12)


def test_correlators_match_exact_diagonalization():
    for n, delta in ((8, 0.5), (10, -0.5)):
        st = solve_ground(n, delta)
        gs = ground_state(build(ChainSpec(Xxz(delta), n), sector=n // 2))
        assert e_n(st) == pytest.approx(
            pure_correlator(gs, alternating(n)).e_value, abs=1e-10)
        assert e_n_minus_2(st) == pytest.approx(
            pure_correlator(gs, alternating(n - 2)).e_value, abs=1e-10)


def test_correlators_of_reconstruction_match_module():
    st = solve_ground(8, 0.7)
    vec = reconstruct_vector(st)
    assert pure_correlator(vec, alternating(8)).e_value == pytest.approx(
        e_n(st), abs=1e-12)
    assert pure_correlator(vec, alternating(6)).e_value == pytest.approx(
        e_n_minus_2(st), abs=1e-12)


def test_free_fermion_four_sites_value():
    assert e_n(solve_ground(4, 0.0)) == pytest.approx(xxz4_zero_T(0.0), abs=1e-12)


def test_e_n_respects_density_bound():
    for delta in (-0.9, 0.0, 0.9):
        st = solve_ground(6, delta)
        assert 0.0 <= e_n(st) <= 0.25
        assert e_n_minus_2(st) >= 0.0


def test_argument_errors():
    with pytest.raises(ArgumentError):
        solve_ground(7, 0.5)
    with pytest.raises(ArgumentError):
        solve_ground(16, 0.5)
    with pytest.raises(ArgumentError):
        solve_ground(8, 1.0)
    with pytest.raises(ArgumentError):
        solve_ground(8, -1.2)
    st = solve_ground(6, 0.2)
    with pytest.raises(ArgumentError):
        amplitude(st, (1, 2))
    with pytest.raises(ArgumentError):
        amplitude(st, (1, 2, 2))
    with pytest.raises(ArgumentError):
        amplitude(st, (0, 2, 4))
