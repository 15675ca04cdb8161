import itertools

import numpy as np
import pytest

from qps.gf import character, make_field
from qps.hilbert import coherent_minus, coherent_plus, su2_coherent
from qps.pauli import (PhaseConvention, PhasePoint, apply_fourier, default_convention,
                       displacement, displacement_factorized, fourier_op,
                       fourier_op_factorized, phase_phi, squeeze_op, x_op,
                       x_op_factorized, z_op, z_op_factorized)

SMALL = [1, 2, 3, 4]


def points(F):
    return [PhasePoint(a, b) for a, b in itertools.product(F, repeat=2)]


def test_identity_elements():
    F = make_field(3)
    np.testing.assert_array_equal(z_op(F.zero).matrix, np.eye(8))
    np.testing.assert_array_equal(x_op(F.zero).matrix, np.eye(8))
    np.testing.assert_array_equal(displacement(PhasePoint(F.zero, F.zero)).matrix, np.eye(8))
    np.testing.assert_array_equal(squeeze_op(F.one).matrix, np.eye(8))


def test_single_qubit_z():
    F = make_field(1)
    np.testing.assert_array_equal(z_op(F.one).matrix, np.diag([1, -1]))


def test_gf4_commutation_example():
    F = make_field(2)
    s = F.sigma
    lhs = (z_op(s) @ x_op(s)).matrix
    rhs = character(s * s) * (x_op(s) @ z_op(s)).matrix
    np.testing.assert_array_equal(lhs, rhs)


@pytest.mark.parametrize("n", SMALL)
def test_pauli_group_exhaustive(n):
    F = make_field(n)
    eye = np.eye(F.order)
    for a in F:
        z, x = z_op(a), x_op(a)
        assert z.is_unitary() and x.is_unitary()
        np.testing.assert_array_equal((z @ z).matrix, eye)
        np.testing.assert_array_equal((x @ x).matrix, eye)
        np.testing.assert_array_equal(z.matrix, z_op_factorized(a).matrix)
        np.testing.assert_array_equal(x.matrix, x_op_factorized(a).matrix)
    for a, b in itertools.product(F, repeat=2):
        lhs = (z_op(a) @ x_op(b)).matrix
        rhs = character(a * b) * (x_op(b) @ z_op(a)).matrix
        np.testing.assert_array_equal(lhs, rhs)


def test_fourier_single_qubit():
    np.testing.assert_allclose(fourier_op(make_field(1)).matrix,
                               np.array([[1, 1], [1, -1]]) / np.sqrt(2), atol=1e-16)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_fourier_involution(n):
    F = make_field(n)
    f = fourier_op(F).matrix
    assert np.abs(f @ f - np.eye(F.order)).max() < 1e-12
    assert np.abs(f - fourier_op_factorized(F).matrix).max() < 1e-14


@pytest.mark.parametrize("n", SMALL)
def test_fourier_conjugation(n):
    F = make_field(n)
    f = fourier_op(F).matrix
    plus, minus = coherent_plus(n), coherent_minus(n)
    for b in F:
        np.testing.assert_allclose(f @ z_op(b).matrix @ f.conj().T, x_op(b).matrix, atol=1e-12)
        for st in (plus, minus):
            assert abs(x_op(b).expect(st) - z_op(b).expect(st)) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_fourier_eigenstates(n):
    f = fourier_op(make_field(n))
    plus, minus = coherent_plus(n), coherent_minus(n)
    assert np.linalg.norm((f @ plus).amplitudes - plus.amplitudes) < 1e-12
    assert np.linalg.norm((f @ minus).amplitudes - (-1) ** n * minus.amplitudes) < 1e-12


@pytest.mark.parametrize("n", [1, 3, 7, 10])
def test_apply_fourier_matrix_free(n):
    s = su2_coherent(0.3 - 0.1j, n)
    out = apply_fourier(s)
    if n <= 6:
        np.testing.assert_allclose(out.amplitudes, (fourier_op(s.field) @ s).amplitudes,
                                   atol=1e-14)
    np.testing.assert_allclose(apply_fourier(out).amplitudes, s.amplitudes, atol=1e-12)


def test_phase_examples():
    F1 = make_field(1)
    assert phase_phi(PhasePoint(F1.one, F1.one)) == 1j
    F2 = make_field(2)
    assert phase_phi(PhasePoint(F2.zero, F2.sigma)) == 1
    one = F2.sigma ** 3    # self-dual coordinates (1, 1)
    assert phase_phi(PhasePoint(one, one)) == -1


@pytest.mark.parametrize("n", SMALL)
def test_phase_constraint(n):
    F = make_field(n)
    for p in points(F):
        phi = phase_phi(p)
        assert abs(phi ** 2 - character(p.alpha * p.beta)) < 1e-15
        if not p.alpha or not p.beta:
            assert phi == 1


def test_broken_rule_violates_constraint():
    F = make_field(1)
    conv = PhaseConvention(F.self_dual_basis, "i^(w+1)")
    p = PhasePoint(F.zero, F.zero)
    assert phase_phi(p, conv) ** 2 == -1
    assert not displacement(p, conv).is_hermitian()
    with pytest.raises(ValueError):
        PhaseConvention(F.self_dual_basis, "i^(2w)")


def test_displacement_single_qubit():
    F = make_field(1)
    np.testing.assert_allclose(displacement(PhasePoint(F.one, F.one)).matrix,
                               [[0, 1j], [-1j, 0]], atol=0)


@pytest.mark.parametrize("n", SMALL)
def test_displacement_hermitian_unitary_factorized(n):
    F = make_field(n)
    for p in points(F):
        d = displacement(p)
        assert d.is_hermitian(1e-15) and d.is_unitary()
        assert np.abs(d.matrix - displacement_factorized(p).matrix).max() < 1e-14


@pytest.mark.parametrize("n", [1, 2, 3])
def test_displacement_operator_basis(n):
    F = make_field(n)
    ds = np.array([displacement(p).matrix for p in points(F)])
    gram = np.einsum("aji,bji->ab", ds.conj(), ds) / F.order
    assert np.abs(gram - np.eye(len(ds))).max() < 1e-12


def test_squeeze_zero():
    with pytest.raises(ZeroDivisionError):
        squeeze_op(make_field(2).zero)


def test_squeeze_gf4_example():
    F = make_field(2)
    s = F.sigma
    S = squeeze_op(s)
    np.testing.assert_array_equal((S.dag @ z_op(s) @ S).matrix, z_op(F.one).matrix)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_squeeze_relations(n):
    F = make_field(n)
    for lam in F:
        if not lam:
            continue
        S = squeeze_op(lam)
        assert S.is_unitary()
        for a in F:
            np.testing.assert_array_equal((S.dag @ z_op(a) @ S).matrix,
                                          z_op(a * lam.inverse()).matrix)
            np.testing.assert_array_equal((S.dag @ x_op(a) @ S).matrix, x_op(a * lam).matrix)


@pytest.mark.parametrize("n", SMALL)
def test_squeeze_expectation_identity(n):
    F = make_field(n)
    for st in (coherent_plus(n), coherent_minus(n)):
        for lam in F:
            if not lam:
                continue
            S = squeeze_op(lam)
            for a in F:
                lhs = (S.dag @ x_op(a) @ S).expect(st)
                rhs = (S.dag @ z_op(a * lam * lam) @ S).expect(st)
                assert abs(lhs - rhs) < 1e-12


def test_dense_cap():
    F = make_field(7)
    with pytest.raises(ValueError, match="n <= 6"):
        fourier_op(F)
    with pytest.raises(ValueError):
        z_op(F.one)


def test_default_convention_shared():
    F = make_field(3)
    assert default_convention(F) is default_convention(F)
    assert default_convention(F).basis == F.self_dual_basis
