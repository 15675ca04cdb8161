"""Discrete Wigner function on the phase space GF(2^n) x GF(2^n).

The kernel is

    Delta(alpha, beta) = 2^-n sum_{mu, nu} chi(alpha nu + beta mu) D(mu, nu)

and ``W(alpha, beta) = Tr[rho Delta(alpha, beta)]``.  Grids are indexed
``values[i, j] = W(alpha_i, beta_j)``: rows are ``alpha``, columns are
``beta``, both in canonical order.

With these definitions ``sum W = 2^n Tr(rho)`` ("raw" normalization) and
``sum_alpha W(alpha, beta) = 2^n <beta|rho|beta>``.  The ``"unit-sum"``
normalization divides by ``2^n``.

Three independent evaluation routes are provided:

* :func:`wigner_by_kernels` builds every kernel and takes traces.
* :func:`wigner_of` with ``method="dense"`` goes through the
  characteristic function ``Tr[rho D(mu, nu)]`` and two character
  transforms, O(8^n).
* :func:`fast_product_path` multiplies 2x2 single-qubit grids for product
  states, O(4^n).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .gf import GaloisField, make_field
from .hilbert import (MAX_DENSE_DEGREE, DenseOperator, StateVector,
                      tensor_factor_check)
from .pauli import (SIGMA_X, SIGMA_Z, PhaseConvention, PhasePoint,
                    character_matrix, default_convention)

__all__ = [
    "NORMALIZATIONS", "KERNEL_CACHE_MAX",
    "WignerGrid", "KernelCache",
    "kernel", "kernel_cache", "wigner_by_kernels", "wigner_of",
    "wigner_coherent_closed_form", "wigner_coherent_closed_form_grid",
    "marginals", "single_qubit_kernel", "fast_product_path",
]

NORMALIZATIONS = ("raw", "unit-sum")
KERNEL_CACHE_MAX = 5
TRACE_TOL = 1e-10
IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WignerGrid:
    """Real ``2^n x 2^n`` grid of Wigner values, rows ``alpha``, columns ``beta``."""

    field: GaloisField
    values: np.ndarray
    convention: PhaseConvention
    normalization: str = "raw"
    imag_residue: float = 0.0

    def __post_init__(self):
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        v = np.array(self.values, dtype=float)
        d = self.field.order
        if v.shape != (d, d):
            raise ValueError(f"expected a {d}x{d} grid, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.field.n

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __getitem__(self, point):
        if isinstance(point, PhasePoint):
            return float(self.values[self.field.index(point.alpha),
                                     self.field.index(point.beta)])
        return self.values[point]

    def total(self) -> float:
        return float(self.values.sum())

    def renormalized(self, normalization: str) -> "WignerGrid":
        if normalization == self.normalization:
            return self
        scale = 1.0 / self.field.order if normalization == "unit-sum" else float(self.field.order)
        return WignerGrid(self.field, self.values * scale, self.convention,
                          normalization, self.imag_residue)


@dataclass(frozen=True, eq=False)
class KernelCache:
    """All kernels of a field: ``operators[i, j] = Delta(alpha_i, beta_j)``.

    ``single[a, b]`` holds the 2x2 factor ``Delta_1(a, b)``; under the
    default phase rule ``Delta(alpha, beta)`` is the Kronecker product of
    ``single[a_k, b_k]`` over the self-dual coordinates.
    """

    field: GaloisField
    convention: PhaseConvention
    operators: np.ndarray
    single: np.ndarray


def _resolve(field: GaloisField, conv: PhaseConvention | None) -> PhaseConvention:
    if conv is None:
        return default_convention(field)
    if conv.field != field:
        raise ValueError("phase convention belongs to another field")
    return conv


def _kernel_matrix(field: GaloisField, conv: PhaseConvention, a: int, b: int) -> np.ndarray:
    # D(mu, nu)|g> = phi(mu, nu) chi(mu (g + nu)) |g + nu>, so
    # Delta[r, r + nu] = 2^-n chi(alpha nu) sum_mu chi(beta mu) phi(mu, nu) chi(mu r).
    # Canonical indices are linear coordinates, hence index(x + y) = i ^ j.
    d = field.order
    chi = character_matrix(field)
    phi = conv.table()
    m = (chi[b][:, None] * phi).T @ chi          # [nu, r]
    m *= chi[a][:, None] / d
    out = np.zeros((d, d), dtype=complex)
    r = np.arange(d)
    for nu in range(d):
        out[r, r ^ nu] = m[nu]
    return out


def kernel(point: PhasePoint, conv: PhaseConvention | None = None) -> DenseOperator:
    """The phase-point operator ``Delta(alpha, beta)``."""
    field = point.field
    if field.n > MAX_DENSE_DEGREE:
        raise ValueError(f"dense kernels are limited to n <= {MAX_DENSE_DEGREE}")
    conv = _resolve(field, conv)
    return DenseOperator(field, _kernel_matrix(
        field, conv, field.index(point.alpha), field.index(point.beta)))


def single_qubit_kernel(a: int, b: int) -> np.ndarray:
    """``Delta_1(a, b) = 1/2 sum_{m,k} (-1)^(a k + b m) i^(m k) Z^m X^k``."""
    out = np.zeros((2, 2), dtype=complex)
    for m in (0, 1):
        for k in (0, 1):
            op = np.linalg.matrix_power(SIGMA_Z, m) @ np.linalg.matrix_power(SIGMA_X, k)
            out += (-1) ** (a * k + b * m) * 1j ** (m * k) * op
    return out / 2


@functools.lru_cache(maxsize=8)
def kernel_cache(field: GaloisField, conv: PhaseConvention | None = None) -> KernelCache:
    """Build every ``Delta(alpha, beta)`` for ``n <= KERNEL_CACHE_MAX``."""
    if field.n > KERNEL_CACHE_MAX:
        raise ValueError(f"kernel cache is limited to n <= {KERNEL_CACHE_MAX}")
    conv = _resolve(field, conv)
    d = field.order
    ops = np.empty((d, d, d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            ops[i, j] = _kernel_matrix(field, conv, i, j)
    single = np.array([[single_qubit_kernel(a, b) for b in (0, 1)] for a in (0, 1)])
    ops.setflags(write=False)
    single.setflags(write=False)
    return KernelCache(field, conv, ops, single)


def _as_density(state, field: GaloisField | None) -> tuple[GaloisField, np.ndarray]:
    if isinstance(state, StateVector):
        return state.field, state.density()
    if isinstance(state, DenseOperator):
        return state.field, np.asarray(state.matrix)
    rho = np.asarray(state, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    d = rho.shape[0]
    if rho.shape != (d, d) or d & (d - 1) or d < 2:
        raise ValueError(f"density matrix must be 2^n x 2^n, got {rho.shape}")
    n = d.bit_length() - 1
    if field is None:
        field = make_field(n)
    elif field.n != n:
        raise ValueError("density matrix size does not match the field")
    return field, rho


def _check_trace(rho: np.ndarray):
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise ValueError(f"state is not normalized: Tr(rho) = {tr:.3g}")


def wigner_by_kernels(state, conv: PhaseConvention | None = None) -> np.ndarray:
    """Complex ``Tr[rho Delta(alpha, beta)]`` from explicit kernels (n <= 5).

    The imaginary part is returned untouched so callers can inspect it.
    """
    field = conv.field if conv is not None else None
    field, rho = _as_density(state, field)
    cache = kernel_cache(field, _resolve(field, conv))
    return np.einsum("abij,ji->ab", cache.operators, rho)


def _dense_values(field: GaloisField, rho: np.ndarray, conv: PhaseConvention) -> np.ndarray:
    d = field.order
    chi = character_matrix(field)
    idx = np.arange(d)
    # shifted[nu, g] = rho[g + nu, g]; C[mu, nu] = phi Tr[rho Z_mu X_nu]
    shifted = rho[idx[None, :] ^ idx[:, None], idx[None, :]]
    char_fn = conv.table() * (chi @ shifted.T)
    return chi @ char_fn.T @ chi / d


def wigner_of(state, conv: PhaseConvention | None = None, *, method: str = "auto",
              normalization: str = "raw") -> WignerGrid:
    """Wigner grid of a pure state or density matrix.

    Parameters
    ----------
    state : StateVector, DenseOperator or array_like
        A normalized state vector or a density matrix with unit trace.
    conv : PhaseConvention, optional
        Displacement phases; defaults to the field's convention.
    method : {"auto", "dense", "product"}
        ``"dense"`` evaluates ``Tr[rho Delta]`` through the characteristic
        function (``n <= 6``).  ``"product"`` requires a product state and
        uses :func:`fast_product_path`.  ``"auto"`` picks the product path
        when the state factorizes and the default phase rule is in use.
    normalization : {"raw", "unit-sum"}

    Raises
    ------
    ValueError
        For unnormalized input, or a non-product state beyond the dense cap.
    """
    if method not in ("auto", "dense", "product"):
        raise ValueError(f"unknown method {method!r}")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")

    if isinstance(state, StateVector) and method in ("auto", "product"):
        conv_ = _resolve(state.field, conv)
        if abs(state.norm() - 1) > TRACE_TOL:
            raise ValueError(f"state is not normalized: |psi| = {state.norm():.3g}")
        factors = None
        if conv_.rule == "i^w" and conv_.basis == state.field.self_dual_basis:
            factors = tensor_factor_check(state.canonical())
        if factors is not None:
            grid = fast_product_path(factors, conv_)
            return grid.renormalized(normalization)
        if method == "product":
            raise ValueError("state is not a product state in self-dual coordinates")
    elif method == "product":
        raise ValueError("the product path needs a StateVector")

    field = conv.field if conv is not None else None
    field, rho = _as_density(state, field)
    if field.n > MAX_DENSE_DEGREE:
        raise ValueError(
            f"dense Wigner evaluation is limited to n <= {MAX_DENSE_DEGREE}; "
            "only product states (e.g. coherent states) can go beyond")
    conv = _resolve(field, conv)
    _check_trace(rho)
    vals = _dense_values(field, rho, conv)
    grid = WignerGrid(field, vals.real, conv, "raw", float(np.abs(vals.imag).max()))
    return grid.renormalized(normalization)


def _popcount(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64).copy()
    c = np.zeros_like(a)
    while np.any(a):
        c += a & 1
        a >>= 1
    return c


def _closed_form_terms(xi: complex, field: GaloisField, conv: PhaseConvention):
    # Everything here is done with field arithmetic on bit masks, independently
    # of the matrix builders.
    e = field.elements
    mu = e[:, None, None]
    nu = e[None, :, None]
    g = e[None, None, :]
    enc = conv.basis.encode_table()
    h_g = _popcount(enc[g])
    h_gn = _popcount(enc[g ^ nu])
    w = _popcount(enc[mu] & enc[nu])
    if conv.rule == "i^(w+1)":
        w = w + 1
    amp = np.power(complex(xi), h_g) * np.power(complex(xi).conjugate(), h_gn)
    phi = 1j ** (w % 4)
    inner = field.mul_values(mu, nu) ^ field.mul_values(mu, g)
    pref = 1.0 / (field.order * (1 + abs(xi) ** 2) ** field.n)
    return mu, nu, amp * phi * pref, inner


def _closed_form_at(field, terms, alpha: int, beta: int) -> complex:
    mu, nu, weight, inner = terms
    arg = field.mul_values(alpha, nu) ^ field.mul_values(beta, mu) ^ inner
    return complex(np.sum(weight * field.character_values(arg)))


def wigner_coherent_closed_form(xi: complex, point: PhasePoint,
                                conv: PhaseConvention | None = None) -> float:
    """Wigner value of ``|xi>`` at one point from the explicit triple sum

    ``2^-n (1+|xi|^2)^-n sum_{mu nu gamma} xi^h(gamma) conj(xi)^h(gamma+nu)
    chi(alpha nu + beta mu + mu nu + mu gamma) phi(mu, nu)``.

    Costs ``8^n`` terms per point.
    """
    field = point.field
    conv = _resolve(field, conv)
    terms = _closed_form_terms(xi, field, conv)
    return _closed_form_at(field, terms, point.alpha.value, point.beta.value).real


def wigner_coherent_closed_form_grid(xi: complex, field: GaloisField,
                                     conv: PhaseConvention | None = None) -> np.ndarray:
    """The triple sum at every phase point; complex, rows ``alpha``."""
    conv = _resolve(field, conv)
    terms = _closed_form_terms(xi, field, conv)
    d = field.order
    out = np.empty((d, d), dtype=complex)
    for i, a in enumerate(field.elements):
        for j, b in enumerate(field.elements):
            out[i, j] = _closed_form_at(field, terms, int(a), int(b))
    return out


def marginals(grid: WignerGrid) -> tuple[np.ndarray, np.ndarray]:
    """``(sum_alpha W(alpha, .), sum_beta W(., beta))``.

    The first vector is indexed by ``beta`` and, in raw normalization,
    equals ``2^n <beta|rho|beta>``; the second is indexed by ``alpha`` and
    equals ``2^n <alpha|F rho F^dag|alpha>``.
    """
    v = grid.values
    return v.sum(axis=0), v.sum(axis=1)


def fast_product_path(factors: Sequence[Sequence[complex]],
                      conv: PhaseConvention | None = None, *,
                      field: GaloisField | None = None) -> WignerGrid:
    """Wigner grid of a product state from its single-qubit factors.

    ``factors[k]`` is the (normalized) state of qubit ``k+1``, i.e. of self-dual
    coordinate ``k+1``.  The grid is the Kronecker product of the 2x2 grids
    ``w_k[a, b] = <f_k|Delta_1(a, b)|f_k>``.

    Raises
    ------
    ValueError
        If the factors are not a list of normalized 2-vectors or the phase
        convention is not the default rule in the field's self-dual basis.
    """
    factors = [np.asarray(f, dtype=complex) for f in factors]
    n = len(factors)
    if n == 0 or any(f.shape != (2,) for f in factors):
        raise ValueError("expected a non-empty list of single-qubit amplitude pairs")
    for f in factors:
        if abs(np.linalg.norm(f) - 1) > TRACE_TOL:
            raise ValueError("single-qubit factors must be normalized")
    if field is None:
        field = conv.field if conv is not None else make_field(n)
    if field.n != n:
        raise ValueError(f"{n} factors given for a degree-{field.n} field")
    conv = _resolve(field, conv)
    if conv.rule != "i^w" or conv.basis != field.self_dual_basis:
        raise ValueError("the product path needs the default phase rule in the "
                         "field's self-dual basis")
    single = np.array([[single_qubit_kernel(a, b) for b in (0, 1)] for a in (0, 1)])
    grids = [np.einsum("i,abij,j->ab", f.conj(), single, f) for f in factors]
    imag = max(float(np.abs(g.imag).max()) for g in grids)
    # qubit 1 is the least significant index bit, so its grid goes last
    values = reduce(np.kron, [g.real for g in reversed(grids)])
    return WignerGrid(field, values, conv, "raw", imag)
