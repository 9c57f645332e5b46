import numpy as np
import pytest

from spincorr.basis import translation_permutation
from spincorr.closedform import xxz4_thermal, xxz4_zero_T
from spincorr.correlator import (SignPattern, SpinOp, alternating, best_pattern,
                                 pure_correlator, thermal_correlator, uniform)
from spincorr.eigensolver import (PureState, full_spectrum, ground_multiplet,
                                  ground_state, symmetric_combination,
                                  thermal_weights)
from spincorr.errors import ArgumentError, CapacityError
from spincorr.hamiltonian import ChainSpec, Ising, MajumdarGhosh, Xxz, build


def ghz(n):
    v = np.zeros(1 << n)
    v[0] = v[-1] = np.sqrt(0.5)
    return PureState(v, n, None, 0.0)


def plus_product(n):
    return PureState(np.full(1 << n, 0.5 ** (n / 2)), n, None, 0.0)


def test_ghz_saturates_quarter():
    for n in range(2, 11):
        r = pure_correlator(ghz(n), uniform(n))
        assert abs(r.e_value - 0.25) <= 1e-12


def test_product_state_powers_of_quarter():
    st = plus_product(6)
    for m in range(1, 7):
        r = pure_correlator(st, uniform(m))
        assert r.e_value == pytest.approx(4.0 ** -m, abs=1e-15)


def test_polarized_state_annihilated():
    v = np.zeros(64)
    v[63] = 1.0
    st = PureState(v, 6, None, 0.0)
    assert pure_correlator(st, alternating(4)).e_value == 0.0
    assert pure_correlator(st, uniform(3)).e_value == 0.0


def test_full_order_is_single_matrix_element():
    rng = np.random.default_rng(2)
    v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    v /= np.linalg.norm(v)
    st = PureState(v, 4, None, 0.0)
    pat = alternating(4)
    r = pure_correlator(st, pat)
    # source: down at RAISE sites 1,3 -> bits 0b1010 ; target flipped
    direct = np.conj(v[0b0101]) * v[0b1010]
    assert r.c_value == pytest.approx(direct, abs=1e-15)


def test_global_phase_invariance():
    rng = np.random.default_rng(4)
    v = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    v /= np.linalg.norm(v)
    st = PureState(v, 6, None, 0.0)
    st2 = PureState(v * np.exp(0.7j), 6, None, 0.0)
    pat = alternating(4)
    assert (pure_correlator(st, pat).e_value
            == pytest.approx(pure_correlator(st2, pat).e_value, abs=1e-15))


def test_sector_unbalanced_pattern_vanishes():
    gs = ground_state(build(ChainSpec(Xxz(0.5), 8), sector=4))
    assert pure_correlator(gs, alternating(7)).e_value == 0.0
    assert pure_correlator(gs, uniform(2)).e_value == 0.0


def test_sector_tail_sum_matches_full_space():
    # same physical state expressed in the sector and in the full space
    delta, n = 0.7, 6
    gs = ground_state(build(ChainSpec(Xxz(delta), n), sector=3))
    full = np.zeros(64, dtype=complex)
    full[gs.sector.configs] = gs.amplitudes
    st_full = PureState(full, n, None, gs.energy)
    for m in (2, 4, 6):
        pat = alternating(m)
        a = pure_correlator(gs, pat).c_value
        b = pure_correlator(st_full, pat).c_value
        assert a == pytest.approx(b, abs=1e-14)


def test_start_site_window_on_translation_invariant_state():
    n = 8
    op = build(ChainSpec(MajumdarGhosh(), n), sector=4)
    sym = symmetric_combination(ground_multiplet(op),
                                translation_permutation(n, op.sector))
    e1 = pure_correlator(sym, alternating(4, start_site=1)).e_value
    e2 = pure_correlator(sym, alternating(4, start_site=2)).e_value
    assert e1 == pytest.approx(e2, abs=1e-12)


def test_density_bound_random_states():
    rng = np.random.default_rng(123)
    for _ in range(200):
        n = int(rng.integers(2, 9))
        v = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        v /= np.linalg.norm(v)
        st = PureState(v, n, None, 0.0)
        m = int(rng.integers(1, n + 1))
        ops = tuple(SpinOp.RAISE if b else SpinOp.LOWER
                    for b in rng.integers(0, 2, m))
        e = pure_correlator(st, SignPattern(ops)).e_value
        assert 0.0 <= e <= 0.25 + 1e-12


def test_pattern_must_fit():
    st = plus_product(4)
    with pytest.raises(ArgumentError):
        pure_correlator(st, alternating(4, start_site=2))
    with pytest.raises(ArgumentError):
        pure_correlator(st, uniform(5))


def test_state_must_be_normalized():
    st = PureState(np.ones(16), 4, None, 0.0)
    with pytest.raises(ArgumentError):
        pure_correlator(st, uniform(2))


def test_thermal_zero_temperature_limit_equals_pure():
    op = build(ChainSpec(Xxz(1.5), 4))
    spec = full_spectrum(op)
    pat = alternating(4)
    cold = thermal_correlator(spec, thermal_weights(spec, 1e5), pat)
    gs = pure_correlator(spec.state(0), pat)
    assert cold.e_value == pytest.approx(gs.e_value, abs=1e-12)


def test_thermal_infinite_temperature_is_trace_average():
    op = build(ChainSpec(Xxz(1.0), 4))
    spec = full_spectrum(op)
    hot = thermal_correlator(spec, thermal_weights(spec, 0.0), alternating(4))
    # the operator moves every product state off itself, so the trace vanishes
    assert abs(hot.c_value) < 1e-14


def test_thermal_matches_closed_form():
    for delta in (0.5, 2.0):
        op = build(ChainSpec(Xxz(delta), 4))
        spec = full_spectrum(op)
        for beta in (1.0, 2.0):
            r = thermal_correlator(spec, thermal_weights(spec, beta), alternating(4))
            assert r.e_value == pytest.approx(xxz4_thermal(delta, beta), abs=1e-12)


def test_thermal_weight_mismatch_rejected():
    spec4 = full_spectrum(build(ChainSpec(Xxz(1.0), 4)))
    spec2 = full_spectrum(build(ChainSpec(Xxz(1.0), 2)))
    with pytest.raises(ArgumentError):
        thermal_correlator(spec4, thermal_weights(spec2, 1.0), alternating(2))


def test_best_pattern_ghz_all_raise():
    pat = best_pattern(ghz(5), 5)
    assert pat.ops == (SpinOp.RAISE,) * 5


def test_best_pattern_neel_product_tie():
    v = np.zeros(16)
    v[0b0101] = 1.0
    pat = best_pattern(PureState(v, 4, None, 0.0), 4)
    assert pat.ops == (SpinOp.RAISE,) * 4  # every pattern gives zero; lex first


def test_best_pattern_ising_antiferromagnet_alternates():
    gs = ground_state(build(ChainSpec(Ising(0.5), 6)))
    pat = best_pattern(gs, 6)
    assert pat == alternating(6)


def test_best_pattern_capacity():
    with pytest.raises(CapacityError):
        best_pattern(plus_product(14), 13)


def test_zero_temperature_formula_check():
    # alternating ground-state correlator of the 4-ring against the closed form
    for delta in (-0.5, 0.0, 1.0, 5.0):
        gs = ground_state(build(ChainSpec(Xxz(delta), 4), sector=2))
        e = pure_correlator(gs, alternating(4)).e_value
        assert e == pytest.approx(xxz4_zero_T(delta), abs=1e-12)
