"""Generalized Pauli group over GF(2^n), finite Fourier and squeezing operators.

All operators are returned as :class:`~qps.hilbert.DenseOperator` in the
canonical (self-dual coordinate) order.  The ``*_factorized`` builders
assemble the same matrices as Kronecker products of 2x2 blocks; they exist
to cross-check the definitions and to back the fast Wigner path.

Sign convention: ``z_op(beta)`` is ``sum_a chi(a beta) |a><a|``, so for a
single qubit ``z_op(1) = diag(+1, -1) = |0><0| - |1><1|``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .gf import Basis, FieldElement, GaloisField
from .hilbert import MAX_DENSE_DEGREE, DenseOperator, StateVector

__all__ = [
    "SIGMA_Z", "SIGMA_X", "HADAMARD",
    "PhasePoint", "PhaseConvention", "default_convention",
    "z_op", "x_op", "fourier_op", "phase_phi", "displacement", "squeeze_op",
    "z_op_factorized", "x_op_factorized", "fourier_op_factorized",
    "displacement_factorized", "character_matrix", "apply_fourier",
]

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def _check_dense(field: GaloisField):
    if field.n > MAX_DENSE_DEGREE:
        raise ValueError(
            f"dense operators are limited to n <= {MAX_DENSE_DEGREE} (got n={field.n})")


@dataclass(frozen=True)
class PhasePoint:
    """A point ``(alpha, beta)`` of the discrete phase space GF(2^n)^2."""

    alpha: FieldElement
    beta: FieldElement

    def __post_init__(self):
        if self.alpha.field != self.beta.field:
            raise ValueError("phase-point coordinates come from different fields")

    @property
    def field(self) -> GaloisField:
        return self.alpha.field

    @classmethod
    def from_indices(cls, field: GaloisField, i: int, j: int) -> "PhasePoint":
        return cls(field.at(i), field.at(j))


@dataclass(frozen=True)
class PhaseConvention:
    """Phase ``phi(alpha, beta)`` attached to ``Z_alpha X_beta``.

    With ``w = sum_k a_k b_k`` computed as an integer from coordinates in the
    self-dual ``basis``, rule ``"i^w"`` gives ``phi = i**w``.  This satisfies
    ``phi**2 = chi(alpha beta)`` and makes every displacement Hermitian.

    Rule ``"i^(w+1)"`` multiplies every phase by ``i``.  It violates
    ``phi**2 = chi(alpha beta)`` and is only meant for exercising the
    verification suite.
    """

    basis: Basis
    rule: str = "i^w"

    RULES = ("i^w", "i^(w+1)")

    def __post_init__(self):
        if self.rule not in self.RULES:
            raise ValueError(f"unknown phase rule {self.rule!r}; expected one of {self.RULES}")
        if not self.basis.is_self_dual():
            raise ValueError("phase convention needs a self-dual basis")

    @property
    def field(self) -> GaloisField:
        return self.basis.field

    @property
    def id(self) -> str:
        return f"{self.rule},w=sum_k(a_k*b_k)"

    def exponent(self, alpha: FieldElement, beta: FieldElement) -> int:
        a, b = self.basis.encode(alpha), self.basis.encode(beta)
        w = bin(a & b).count("1")
        return w + 1 if self.rule == "i^(w+1)" else w

    def table(self) -> np.ndarray:
        """``phi`` for every pair of canonical indices, shape ``(d, d)``."""
        return _phase_table(self)


@functools.lru_cache(maxsize=64)
def _phase_table(conv: PhaseConvention) -> np.ndarray:
    field = conv.field
    coords = conv.basis.encode_table()[field.elements]
    w = np.vectorize(lambda v: bin(v).count("1"))(coords[:, None] & coords[None, :])
    if conv.rule == "i^(w+1)":
        w = w + 1
    out = (1j ** (w % 4)).astype(complex)
    out.setflags(write=False)
    return out


@functools.lru_cache(maxsize=None)
def default_convention(field: GaloisField) -> PhaseConvention:
    return PhaseConvention(field.self_dual_basis)


@functools.lru_cache(maxsize=32)
def character_matrix(field: GaloisField) -> np.ndarray:
    """``chi(e_i e_j)`` over canonical indices, computed by field arithmetic."""
    e = field.elements
    out = field.character_values(field.mul_values(e[:, None], e[None, :]))
    out.setflags(write=False)
    return out


# ---------------------------------------------------------------------------
# definition-based builds
# ---------------------------------------------------------------------------

def z_op(beta: FieldElement) -> DenseOperator:
    """``Z_beta = sum_a chi(a beta) |a><a|``."""
    field = beta.field
    _check_dense(field)
    diag = field.character_values(field.mul_values(field.elements, beta.value))
    return DenseOperator(field, np.diag(diag.astype(complex)))


def x_op(beta: FieldElement) -> DenseOperator:
    """``X_beta = sum_a |a + beta><a|``."""
    field = beta.field
    _check_dense(field)
    d = field.order
    m = np.zeros((d, d))
    rows = field.position[field.elements ^ beta.value]
    m[rows, np.arange(d)] = 1.0
    return DenseOperator(field, m)


def fourier_op(field: GaloisField) -> DenseOperator:
    """``F = 2^(-n/2) sum_{mu nu} chi(mu nu) |mu><nu|``."""
    _check_dense(field)
    return DenseOperator(field, character_matrix(field) / np.sqrt(field.order))


def phase_phi(point: PhasePoint, conv: PhaseConvention | None = None) -> complex:
    conv = default_convention(point.field) if conv is None else conv
    return 1j ** (conv.exponent(point.alpha, point.beta) % 4)


def displacement(point: PhasePoint, conv: PhaseConvention | None = None) -> DenseOperator:
    """``D(alpha, beta) = phi(alpha, beta) Z_alpha X_beta``."""
    zx = z_op(point.alpha) @ x_op(point.beta)
    return zx * phase_phi(point, conv)


def squeeze_op(lam: FieldElement) -> DenseOperator:
    """``S_lambda = sum_k |k><lambda k|`` for ``lambda != 0``.

    Built as an index permutation from field multiplication.
    """
    if lam.value == 0:
        raise ZeroDivisionError("squeeze_op needs lambda != 0")
    field = lam.field
    _check_dense(field)
    d = field.order
    cols = field.position[field.mul_values(field.elements, lam.value)]
    m = np.zeros((d, d))
    m[np.arange(d), cols] = 1.0
    return DenseOperator(field, m)


# ---------------------------------------------------------------------------
# Kronecker builds in self-dual coordinates
# ---------------------------------------------------------------------------

def _kron_bits(field: GaloisField, bits: int, factor) -> np.ndarray:
    # qubit 1 is the least significant index bit, so it goes last in kron
    blocks = [factor(bits >> k & 1) for k in reversed(range(field.n))]
    return reduce(np.kron, blocks)


def z_op_factorized(beta: FieldElement) -> DenseOperator:
    field = beta.field
    _check_dense(field)
    b = field.index(beta)
    return DenseOperator(field, _kron_bits(
        field, b, lambda a: np.linalg.matrix_power(SIGMA_Z, a)))


def x_op_factorized(beta: FieldElement) -> DenseOperator:
    field = beta.field
    _check_dense(field)
    b = field.index(beta)
    return DenseOperator(field, _kron_bits(
        field, b, lambda a: np.linalg.matrix_power(SIGMA_X, a)))


def fourier_op_factorized(field: GaloisField) -> DenseOperator:
    _check_dense(field)
    return DenseOperator(field, reduce(np.kron, [HADAMARD] * field.n))


def _single_displacement(a: int, b: int) -> np.ndarray:
    return 1j ** (a * b) * np.linalg.matrix_power(SIGMA_Z, a) @ np.linalg.matrix_power(SIGMA_X, b)


def displacement_factorized(point: PhasePoint,
                            conv: PhaseConvention | None = None) -> DenseOperator:
    """``D(alpha, beta)`` as ``(x)_k i^(a_k b_k) Z^(a_k) X^(b_k)``."""
    field = point.field
    _check_dense(field)
    conv = default_convention(field) if conv is None else conv
    if conv.basis != field.self_dual_basis:
        raise ValueError("factorized build needs the field's canonical self-dual basis")
    a, b = field.index(point.alpha), field.index(point.beta)
    blocks = [_single_displacement(a >> k & 1, b >> k & 1)
              for k in reversed(range(field.n))]
    m = reduce(np.kron, blocks)
    if conv.rule == "i^(w+1)":
        m = 1j * m
    return DenseOperator(field, m)


def apply_fourier(state: StateVector) -> StateVector:
    """``F|psi>`` without forming ``F``: a Hadamard on every self-dual qubit."""
    field = state.field
    psi = state.canonical().amplitudes.reshape((2,) * field.n)
    for axis in range(field.n):
        psi = np.moveaxis(np.tensordot(HADAMARD, psi, axes=([1], [axis])), 0, axis)
    return StateVector(field, psi.reshape(-1))
