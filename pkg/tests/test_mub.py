import math

import numpy as np
import pytest

from umebmub.bases import complete_basis
from umebmub.errors import NotUnitaryError, ShapeError
from umebmub.linalg import is_unitary, random_unitary
from umebmub.mub import (
    EXAMPLE_IDS,
    SIGN_TRIPLES,
    MubPairSpec,
    PhaseSpec,
    build_second_basis,
    constant_modulus_report,
    corollary_check,
    example_catalog,
    example_phase_spec,
    omega,
    phase_deviation,
    theorem_conditions,
    theorem_family_terms,
    theorem_lhs,
    three_way,
    transformed_matrix,
    verify_pair_direct,
    verify_transformed,
)
from umebmub.search import hadamard_sign_patterns

from oracles import printed_ket


def identity_spec(d):
    return MubPairSpec(d, np.eye(2), np.eye(d))


def test_catalog_shapes_and_unitarity():
    for ex in EXAMPLE_IDS:
        spec = example_catalog(ex)
        assert is_unitary(spec.S) and is_unitary(spec.W)
    assert example_catalog("ex4").d == 8
    np.testing.assert_allclose(example_catalog("ex2").S, np.diag([np.exp(2j * np.pi / 3), np.exp(1j * np.pi / 6)]))
    np.testing.assert_allclose(example_catalog("ex3").S, np.diag([np.exp(1j * np.pi / 3), np.exp(-1j * np.pi / 6)]))
    assert omega(11) == pytest.approx(np.exp(-1j * np.pi / 6))
    with pytest.raises(KeyError, match="ex5"):
        example_catalog("ex5")


@pytest.mark.parametrize("ex", EXAMPLE_IDS)
def test_stated_phases_reproduce_printed_W(ex):
    ps = example_phase_spec(ex)
    spec = example_catalog(ex)
    np.testing.assert_allclose(ps.W(), spec.W, atol=1e-15)
    np.testing.assert_allclose(ps.S(), spec.S, atol=1e-15)


@pytest.mark.parametrize("ex", EXAMPLE_IDS)
def test_second_basis_matches_printed_kets(ex):
    psi = build_second_basis(example_catalog(ex))
    for label, state in zip(psi.labels, psi.states):
        np.testing.assert_allclose(state.amplitudes, printed_ket(ex, label), atol=1e-12)


def test_second_basis_example1_first_state():
    psi = build_second_basis(example_catalog("ex1")).state(0, 0)
    x0 = np.array([-1, 1, 1, 1]) / 2
    x1 = np.array([1, -1, 1, 1]) / 2
    np.testing.assert_allclose(psi.amplitudes, (1j * np.kron([1, 0], x0) + np.kron([0, 1], x1)) / math.sqrt(2))


@pytest.mark.parametrize("d", [3, 4, 7])
def test_identity_transform(d):
    a, b = complete_basis(d), build_second_basis(identity_spec(d))
    np.testing.assert_allclose(a.matrix(), b.matrix())


def test_second_basis_is_orthonormal(rng):
    for d in (3, 5):
        spec = MubPairSpec(d, random_unitary(2, rng), random_unitary(d, rng))
        M = build_second_basis(spec).matrix()
        np.testing.assert_allclose(M.conj().T @ M, np.eye(2 * d), atol=1e-12)


def test_non_unitary_spec_rejected():
    spec = MubPairSpec(4, np.eye(2), np.ones((4, 4)) / 2)
    with pytest.raises(NotUnitaryError):
        build_second_basis(spec)
    with pytest.raises(ShapeError):
        MubPairSpec(4, np.eye(3), np.eye(4))


def test_direct_examples():
    target = 1 / (2 * math.sqrt(2))
    r = verify_pair_direct(complete_basis(4), build_second_basis(example_catalog("ex1")))
    assert r.passed and r.target_value == pytest.approx(target)
    assert r.max_abs_deviation < 1e-12

    a = complete_basis(4)
    r = verify_pair_direct(a, a)
    assert not r.passed
    assert r.max_abs_deviation == pytest.approx(1 - target)
    assert "modulus at worst pair 1" in r.notes[0]
    assert r.worst_index == [[0, 0], [0, 0]]

    r = verify_pair_direct(complete_basis(8), build_second_basis(example_catalog("ex4")))
    assert r.passed and r.target_value == 0.25


def test_direct_dimension_mismatch():
    with pytest.raises(ShapeError):
        verify_pair_direct(complete_basis(4), complete_basis(5))


def test_transformed_matrix_examples():
    T = transformed_matrix(example_catalog("ex1"))
    np.testing.assert_allclose(np.abs(T), 1 / (2 * math.sqrt(2)), atol=1e-15)
    T = transformed_matrix(identity_spec(4))
    np.testing.assert_allclose(T, np.eye(8), atol=1e-15)
    assert not constant_modulus_report(T).passed


def test_theorem_examples():
    r = theorem_conditions(example_catalog("ex1"))
    assert r.passed and r.target_value == pytest.approx(1 / math.sqrt(2))
    r = theorem_conditions(identity_spec(4))
    assert not r.passed
    # family 9 with S = I, W = I: |1 + 1 + 1 + 1| or |1 - 1 ...|, never sqrt(2/d)
    assert r.max_abs_deviation == pytest.approx(2 - 1 / math.sqrt(2))


def test_sign_triples_encode_labels():
    assert all(c == (a + b) % 2 for a, b, c in SIGN_TRIPLES)


@pytest.mark.parametrize("d", [3, 4, 5, 8])
def test_theorem_families_cover_every_entry(d, rng):
    """Each family instance equals twice one entry modulus of F^dagger (S x W) F, and together they hit every entry."""
    spec = MubPairSpec(d, random_unitary(2, rng), random_unitary(d, rng))
    T = np.abs(transformed_matrix(spec))
    labels = complete_basis(d).labels
    covered = set()
    for _fam, _k, _j, w_idx in theorem_family_terms(d):
        m, q = w_idx[0][0] - 1, w_idx[0][1] - 1
        for signs in SIGN_TRIPLES:
            n, p = signs[0], signs[1]
            row, col = labels.index((n, m)), labels.index((p, q))
            assert theorem_lhs(spec, w_idx, signs) / 2 == pytest.approx(T[row, col], abs=1e-12)
            covered.add((row, col))
    assert covered == {(r, c) for r in range(2 * d) for c in range(2 * d)}


@pytest.mark.parametrize("ex", EXAMPLE_IDS)
def test_three_way_on_catalog(ex):
    assert three_way(example_catalog(ex)) == (True, True, True)


def test_three_way_random_and_global_phase(rng):
    for d in (3, 4, 6):
        for _ in range(20):
            spec = MubPairSpec(d, random_unitary(2, rng), random_unitary(d, rng))
            verdicts = three_way(spec)
            assert len(set(verdicts)) == 1
            a, b = rng.uniform(0, 2 * np.pi, 2)
            rotated = MubPairSpec(d, np.exp(1j * a) * spec.S, np.exp(1j * b) * spec.W)
            assert three_way(rotated) == verdicts


@pytest.mark.parametrize("ex", EXAMPLE_IDS)
def test_three_way_global_phase_on_catalog(ex, rng):
    spec = example_catalog(ex)
    a, b = rng.uniform(0, 2 * np.pi, 2)
    assert three_way(MubPairSpec(spec.d, np.exp(1j * a) * spec.S, np.exp(1j * b) * spec.W)) == (True, True, True)


def test_phase_deviation_mod_pi():
    for x in (np.pi / 2, -np.pi / 2, 3 * np.pi / 2, 5 * np.pi / 2, -7 * np.pi / 2):
        assert phase_deviation(x) == pytest.approx(0, abs=1e-12)
    assert phase_deviation(0.0) == pytest.approx(np.pi / 2)
    assert phase_deviation(np.pi) == pytest.approx(np.pi / 2)


def test_corollary_examples():
    assert corollary_check(example_phase_spec("ex1")).passed
    assert corollary_check(example_phase_spec("ex3")).passed
    d = 4
    flat = PhaseSpec(d, 0.0, 0.0, np.full((d, d), 0.5), np.zeros((d, d)))
    r = corollary_check(flat)
    assert not r.passed and r.max_abs_deviation == pytest.approx(np.pi / 2)
    assert any("not unitary" in n for n in r.notes)


def test_corollary_modulus_condition():
    ps = example_phase_spec("ex1")
    r = ps.r.copy()
    r[2, 1] = 0.4
    bad = PhaseSpec(4, ps.phi1, ps.phi2, r, ps.theta)
    rep = corollary_check(bad)
    assert not rep.passed and rep.worst_index == ["modulus", [3, 2]]


def test_phase_spec_round_trip():
    spec = example_catalog("ex2")
    ps = PhaseSpec.from_mub_spec(spec)
    np.testing.assert_allclose(ps.to_mub_spec().W, spec.W, atol=1e-15)
    np.testing.assert_allclose(ps.S(), spec.S, atol=1e-15)
    with pytest.raises(ShapeError):
        PhaseSpec.from_mub_spec(MubPairSpec(4, np.array([[0, 1], [1, 0]]), spec.W))


def test_corollary_implies_direct_on_hadamard_patterns():
    d = 4
    first = complete_basis(d)
    for H in hadamard_sign_patterns(d):
        ps = PhaseSpec(d, np.pi / 2, 0.0, np.abs(H) / 2, np.where(H < 0, np.pi, 0.0))
        if corollary_check(ps).passed:
            assert verify_pair_direct(first, build_second_basis(ps.to_mub_spec())).passed


def test_corollary_agrees_with_direct_for_diagonal_S(rng):
    """With diagonal S and |w| = 1/sqrt(d) the phase condition is exact, not only sufficient."""
    d = 4
    first = complete_basis(d)
    for H in hadamard_sign_patterns(d)[::16]:
        for phi1, phi2 in [(0.3, 0.3 - np.pi / 2), (1.0, 0.2), (0.0, 0.0), tuple(rng.uniform(0, 6, 2))]:
            ps = PhaseSpec(d, phi1, phi2, np.abs(H) / 2, np.where(H < 0, np.pi, 0.0))
            direct = verify_pair_direct(first, build_second_basis(ps.to_mub_spec())).passed
            assert corollary_check(ps).passed == direct
