"""n-qubit states labelled by elements of GF(2^n).

A ket ``|gamma>`` is identified with the computational basis state
``|c_1 ... c_n>`` where ``c_k`` are the coordinates of ``gamma`` in a
labelling basis; the amplitude index is ``c_1 + 2 c_2 + ... + 2^(n-1) c_n``.
The default labelling basis is the field's self-dual basis, in which SU(2)
coherent states are plain tensor products.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Sequence

import numpy as np

from .gf import Basis, FieldElement, GaloisField, coordinates, make_field

__all__ = [
    "MAX_DENSE_DEGREE", "XI_PLUS", "XI_MINUS",
    "StateVector", "DenseOperator", "BlochPoint",
    "hamming_h", "dicke_state", "su2_coherent", "coherent_plus",
    "coherent_minus", "bloch_to_xi", "basis_change_permutation",
    "tensor_factor_check", "product_state",
]

MAX_DENSE_DEGREE = 6

FACTOR_TOL = 1e-10


def _sqrt2_minus_one(sign: int) -> float:
    with localcontext() as ctx:
        ctx.prec = 50
        return float(sign * Decimal(2).sqrt() - 1)


XI_PLUS = _sqrt2_minus_one(+1)
XI_MINUS = _sqrt2_minus_one(-1)


@dataclass(frozen=True, eq=False)
class StateVector:
    """State of n qubits as ``2^n`` amplitudes.

    ``amplitudes[i]`` belongs to the field element whose coordinates in
    ``labeling`` are the bits of ``i``.  ``labeling`` defaults to the
    field's self-dual basis, which is the order every operator in the
    package uses.
    """

    field: GaloisField
    amplitudes: np.ndarray
    labeling: Basis | None = None

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        amps.setflags(write=False)
        if amps.shape != (self.field.order,):
            raise ValueError(
                f"expected {self.field.order} amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)
        if self.labeling is None:
            object.__setattr__(self, "labeling", self.field.self_dual_basis)
        elif self.labeling.field != self.field:
            raise ValueError("labelling basis belongs to another field")

    @property
    def n(self) -> int:
        return self.field.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_canonical(self) -> bool:
        return self.labeling == self.field.self_dual_basis

    def amplitude(self, gamma: FieldElement) -> complex:
        return complex(self.amplitudes[self.labeling.encode(gamma)])

    def relabel(self, basis: Basis | None = None) -> "StateVector":
        """Same state with amplitudes reindexed by ``basis`` coordinates."""
        basis = self.field.self_dual_basis if basis is None else basis
        if basis == self.labeling:
            return self
        perm = basis_change_permutation(self.labeling, basis)
        return StateVector(self.field, perm.matrix @ self.amplitudes, basis)

    def canonical(self) -> "StateVector":
        return self.relabel(None)

    def density(self) -> np.ndarray:
        """``|psi><psi|`` in canonical order."""
        psi = self.canonical().amplitudes
        return np.outer(psi, psi.conj())

    def allclose(self, other: "StateVector", atol: float = 1e-12) -> bool:
        return (self.field == other.field and np.allclose(
            self.canonical().amplitudes, other.canonical().amplitudes,
            rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """A ``2^n x 2^n`` complex matrix acting on canonically ordered states."""

    field: GaloisField
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        m.setflags(write=False)
        d = self.field.order
        if m.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(self.field, self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            return StateVector(self.field, self.matrix @ other.canonical().amplitudes)
        return self.matrix @ np.asarray(other)

    def __mul__(self, scalar):
        return DenseOperator(self.field, self.matrix * scalar)

    __rmul__ = __mul__

    @property
    def dag(self) -> "DenseOperator":
        return DenseOperator(self.field, self.matrix.conj().T)

    def is_unitary(self, tol: float = 1e-12) -> bool:
        d = self.field.order
        return bool(np.abs(self.matrix.conj().T @ self.matrix - np.eye(d)).max() < tol)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.abs(self.matrix - self.matrix.conj().T).max() < tol)

    def expect(self, state: StateVector) -> complex:
        psi = state.canonical().amplitudes
        return complex(psi.conj() @ self.matrix @ psi)


@dataclass(frozen=True)
class BlochPoint:
    """Polar angle ``theta`` in [0, pi] and azimuth ``phi`` in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2 * math.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2 pi)")


def _field_for(n: int, field: GaloisField | None) -> GaloisField:
    if field is None:
        return make_field(n)
    if field.n != n:
        raise ValueError(f"field {field} does not have degree {n}")
    return field


def hamming_h(gamma: FieldElement, sd_basis: Basis | None = None) -> int:
    """Number of nonzero coordinates of ``gamma`` in a self-dual basis."""
    sd_basis = gamma.field.self_dual_basis if sd_basis is None else sd_basis
    if not sd_basis.is_self_dual():
        raise ValueError("hamming_h needs a self-dual basis")
    return sum(coordinates(gamma, sd_basis))


def _weights(field: GaloisField) -> np.ndarray:
    idx = np.arange(field.order)
    return np.array([bin(i).count("1") for i in idx])


def dicke_state(n: int, k: int, *, field: GaloisField | None = None) -> StateVector:
    """Symmetric state with ``k`` excitations, ``|n, k>``.

    Every element ``gamma`` with ``h(gamma) = k`` carries the amplitude
    ``sqrt(k! (n-k)! / n!)``.
    """
    if not 0 <= k <= n:
        raise ValueError(f"excitation number k={k} outside [0, {n}]")
    field = _field_for(n, field)
    amps = np.where(_weights(field) == k, 1 / math.sqrt(math.comb(n, k)), 0.0)
    return StateVector(field, amps)


def su2_coherent(xi: complex, n: int, *, field: GaloisField | None = None) -> StateVector:
    """Spin coherent state ``|xi>`` of n qubits.

    The amplitude of ``|gamma>`` is ``xi**h(gamma) / (1 + |xi|^2)**(n/2)``,
    i.e. the n-fold tensor power of ``(|0> + xi |1>) / sqrt(1 + |xi|^2)`` in
    self-dual coordinates.
    """
    field = _field_for(n, field)
    h = _weights(field)
    amps = np.power(complex(xi), h) / (1 + abs(xi) ** 2) ** (n / 2)
    return StateVector(field, amps)


def coherent_plus(n: int, *, field: GaloisField | None = None) -> StateVector:
    """Coherent state with ``xi = sqrt(2) - 1``; Fourier eigenvalue +1."""
    return su2_coherent(XI_PLUS, n, field=field)


def coherent_minus(n: int, *, field: GaloisField | None = None) -> StateVector:
    """Coherent state with ``xi = -sqrt(2) - 1``; Fourier eigenvalue ``(-1)**n``."""
    return su2_coherent(XI_MINUS, n, field=field)


def bloch_to_xi(point: BlochPoint) -> complex:
    """Stereographic coordinate ``cot(theta/2) exp(-i phi)``."""
    if point.theta == 0.0:
        raise ValueError("theta = 0 is the pole; xi is infinite there")
    half = point.theta / 2
    return math.cos(half) / math.sin(half) * complex(math.cos(point.phi), -math.sin(point.phi))


def basis_change_permutation(from_basis: Basis, to_basis: Basis) -> DenseOperator:
    """Permutation ``P = sum_mu |mu'><mu|`` between two labellings.

    Column ``i`` is the ket whose ``from_basis`` coordinates are the bits of
    ``i``; it is sent to the row indexed by the same element's
    ``to_basis`` coordinates.
    """
    if from_basis.field != to_basis.field:
        raise ValueError("bases belong to different fields")
    field = from_basis.field
    d = field.order
    cols = np.arange(d)
    rows = to_basis.encode_table()[from_basis.decode_table()]
    p = np.zeros((d, d))
    p[rows, cols] = 1.0
    return DenseOperator(field, p)


def product_state(factors: Sequence[Sequence[complex]], *,
                  field: GaloisField | None = None) -> StateVector:
    """Tensor product of single-qubit states; ``factors[k]`` is qubit k+1."""
    n = len(factors)
    psi = np.ones(1, dtype=complex)
    for f in factors:
        psi = np.kron(np.asarray(f, dtype=complex), psi)
    return StateVector(_field_for(n, field), psi)


def tensor_factor_check(state: StateVector, tol: float = FACTOR_TOL) -> list[np.ndarray] | None:
    """Split a state into single-qubit factors, or return ``None``.

    The split is of the qubit register as labelled by ``state.labeling``;
    for the default labelling that means self-dual coordinates.  Factors
    come back ordered by qubit (self-dual coordinate) index, each
    normalised; all factors but the first have their largest component real
    and positive, the first one carries the global phase.  A state counts as
    a product when every successive bipartition has second singular value
    below ``tol`` and the rebuilt product matches within ``tol``.
    """
    psi = state.amplitudes
    norm = np.linalg.norm(psi)
    if norm == 0:
        return None
    rest = psi / norm
    factors = []
    for _ in range(state.n - 1):
        # rest index = (higher qubits) * 2 + lowest qubit
        u, s, vh = np.linalg.svd(rest.reshape(-1, 2), full_matrices=False)
        if s.size > 1 and s[1] > tol:
            return None
        factors.append(vh[0])
        rest = s[0] * u[:, 0]
    factors.append(rest / np.linalg.norm(rest))

    phase = 1.0 + 0j
    for k in range(1, len(factors)):
        f = factors[k]
        big = f[np.argmax(np.abs(f))]
        unit = big / abs(big)
        factors[k] = f / unit
        phase *= unit
    factors[0] = factors[0] * phase

    rebuilt = np.ones(1, dtype=complex)
    for f in factors:
        rebuilt = np.kron(f, rebuilt)
    if np.abs(rebuilt - psi / norm).max() > tol:
        return None
    return factors
