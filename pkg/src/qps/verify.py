"""Invariant checks across all modules, used by ``qps verify``.

Each check runs for every ``n`` from 1 up to ``n_max`` clipped to its own
cap, stops at the first counterexample and reports it.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import gf, hilbert, pauli, wigner
from .gf import make_field
from .pauli import PhaseConvention, PhasePoint

__all__ = ["CheckFailure", "CheckResult", "CHECKS", "run_checks"]

TOL = 1e-12


class CheckFailure(AssertionError):
    """A violated invariant; the message is the counterexample."""


@dataclass
class CheckResult:
    name: str
    ok: bool
    ns: tuple[int, ...]
    seconds: float
    detail: str = ""


def _fmt(m: np.ndarray) -> str:
    return np.array2string(np.asarray(m), precision=4, threshold=16, edgeitems=2,
                           suppress_small=True)


def _require(cond, msg: Callable[[], str] | str):
    if not cond:
        raise CheckFailure(msg() if callable(msg) else msg)


def _points(field):
    for i in range(field.order):
        for j in range(field.order):
            yield PhasePoint.from_indices(field, i, j)


def _pt(p: PhasePoint) -> str:
    return f"(alpha={p.alpha.label()}, beta={p.beta.label()})"


# --- gf -------------------------------------------------------------------

def check_field_axioms(field, conv):
    e = field.elements
    a, b, c = e[:, None, None], e[None, :, None], e[None, None, :]
    m = field.mul_values
    _require(np.array_equal(m(m(a, b), c), m(a, m(b, c))), "multiplication not associative")
    _require(np.array_equal(m(a, b ^ c), m(a, b) ^ m(a, c)), "distributivity fails")
    _require(np.array_equal(m(e[:, None], e[None, :]), m(e[None, :], e[:, None])),
             "multiplication not commutative")
    for x in field:
        y = gf.mul(x, x) if x.value else None
        _require(gf.add(x, x) == field.zero, f"{x!r} + {x!r} != 0")
        if x.value:
            _require(x * x.inverse() == field.one, f"{x!r} * inv({x!r}) != 1")
            _require(int(m(x.value, x.value)) == y.value, f"table and carry-less mul disagree at {x!r}")
    powers = [field.power(k).value for k in range(1, field.order)]
    _require(len(set(powers)) == field.order - 1, "powers of the primitive element repeat")


def check_trace(field, conv):
    tr = field.trace_values(np.arange(field.order))
    _require(set(tr.tolist()) <= {0, 1}, "trace leaves {0, 1}")
    for v in range(field.order):
        _require(field._trace_by_definition(v) == tr[v],
                 f"trace table disagrees with a + a^2 + ... at {field(v)!r}")
    e = np.arange(field.order)
    _require(np.array_equal(field.trace_values(e[:, None] ^ e[None, :]),
                            tr[:, None] ^ tr[None, :]), "trace not additive")
    _require(np.array_equal(field.trace_values(field.mul_values(e, e)), tr),
             "tr(a^2) != tr(a)")


def check_character_sums(field, conv):
    chi = pauli.character_matrix(field)
    sums = chi.sum(axis=0)
    expect = np.zeros(field.order)
    expect[0] = field.order
    bad = np.flatnonzero(sums != expect)
    _require(bad.size == 0, lambda: f"sum_a chi(a b) = {sums[bad[0]]} at b={field.at(bad[0])!r}")


def check_bases(field, conv):
    sd = field.self_dual_basis
    _require(np.array_equal(gf.gram_matrix(sd), np.eye(field.n, dtype=int)),
             lambda: f"self-dual Gram matrix\n{gf.gram_matrix(sd)}")
    for basis in (gf.polynomial_basis(field), gf.normal_basis(field), sd):
        dual = gf.dual_basis(basis)
        g = gf.gram_matrix(basis, dual)
        _require(np.array_equal(g, np.eye(field.n, dtype=int)),
                 lambda: f"Gram(basis, dual) of {basis.kind} basis\n{g}")
        _require(gf.dual_basis(dual).elements == basis.elements,
                 f"dual of dual differs for the {basis.kind} basis")
        if field.n <= 8:
            for x in field:
                _require(gf.from_coordinates(gf.coordinates(x, basis), basis) == x,
                         f"coordinate round trip fails for {x!r} in the {basis.kind} basis")


# --- hilbert --------------------------------------------------------------

def check_coherent_dicke(field, conv):
    n = field.n
    for xi in (0.3, -0.7 + 0.2j, 1j, hilbert.XI_PLUS, hilbert.XI_MINUS):
        psi = hilbert.su2_coherent(xi, n).amplitudes
        expansion = sum(math.sqrt(math.comb(n, k)) * xi ** k
                        * hilbert.dicke_state(n, k).amplitudes for k in range(n + 1))
        expansion = expansion / (1 + abs(xi) ** 2) ** (n / 2)
        err = np.abs(psi - expansion).max()
        _require(err < TOL, f"coherent state differs from Dicke expansion by {err:.3g} at xi={xi}")
    gram = np.array([[np.vdot(hilbert.dicke_state(n, k).amplitudes,
                              hilbert.dicke_state(n, j).amplitudes) for j in range(n + 1)]
                     for k in range(n + 1)])
    _require(np.abs(gram - np.eye(n + 1)).max() < TOL, lambda: f"Dicke Gram matrix\n{_fmt(gram)}")


def check_factorization(field, conv):
    for xi in (0.5, 0.2 - 0.9j, hilbert.XI_PLUS, hilbert.XI_MINUS):
        fac = hilbert.tensor_factor_check(hilbert.su2_coherent(xi, field.n))
        _require(fac is not None, f"coherent state xi={xi} reported non-factorizable")
        one = np.array([1, xi]) / math.sqrt(1 + abs(xi) ** 2)
        for k, f in enumerate(fac):
            overlap = abs(np.vdot(one, f))
            _require(abs(overlap - 1) < 1e-10, f"factor {k + 1} of xi={xi} has overlap {overlap}")


def check_permutations(field, conv):
    bases = [gf.polynomial_basis(field), gf.normal_basis(field), field.self_dual_basis]
    for b1, b2 in itertools.product(bases, repeat=2):
        p = hilbert.basis_change_permutation(b1, b2).matrix
        _require(np.array_equal(p.sum(axis=0), np.ones(field.order))
                 and np.array_equal(p.sum(axis=1), np.ones(field.order)),
                 f"{b1.kind} -> {b2.kind} is not a permutation")
        for x in field:
            col = np.zeros(field.order)
            col[b1.encode(x)] = 1
            _require(np.argmax(p @ col) == b2.encode(x),
                     f"{b1.kind} -> {b2.kind} mislabels {x!r}")


# --- pauli ----------------------------------------------------------------

def check_pauli_group(field, conv):
    eye = np.eye(field.order)
    zs = {x.value: pauli.z_op(x).matrix for x in field}
    xs = {x.value: pauli.x_op(x).matrix for x in field}
    for x in field:
        for m in (zs[x.value], xs[x.value]):
            _require(np.abs(m @ m - eye).max() < TOL, f"Z/X at {x!r} is not an involution")
            _require(np.abs(m.conj().T @ m - eye).max() < TOL, f"Z/X at {x!r} is not unitary")
        _require(np.abs(zs[x.value] - pauli.z_op_factorized(x).matrix).max() < 1e-14,
                 f"Kronecker Z differs at {x!r}")
        _require(np.abs(xs[x.value] - pauli.x_op_factorized(x).matrix).max() < 1e-14,
                 f"Kronecker X differs at {x!r}")
    for a, b in itertools.product(field, repeat=2):
        lhs = zs[a.value] @ xs[b.value]
        rhs = gf.character(a * b) * xs[b.value] @ zs[a.value]
        _require(np.array_equal(lhs, rhs), f"Z_a X_b != chi(ab) X_b Z_a at a={a!r}, b={b!r}")


def check_fourier(field, conv):
    f = pauli.fourier_op(field)
    m = f.matrix
    eye = np.eye(field.order)
    _require(np.abs(m @ m - eye).max() < TOL, "F^2 != 1")
    _require(f.is_unitary(), "F is not unitary")
    _require(np.abs(m - pauli.fourier_op_factorized(field).matrix).max() < 1e-14,
             "F differs from the Kronecker product of Hadamards")
    for x in field:
        conj = m @ pauli.z_op(x).matrix @ m.conj().T
        _require(np.abs(conj - pauli.x_op(x).matrix).max() < TOL, f"F Z F^dag != X at {x!r}")
    plus, minus = hilbert.coherent_plus(field.n), hilbert.coherent_minus(field.n)
    r_plus = np.linalg.norm((f @ plus).amplitudes - plus.amplitudes)
    r_minus = np.linalg.norm((f @ minus).amplitudes - (-1) ** field.n * minus.amplitudes)
    _require(r_plus < TOL, f"F|xi+> != |xi+>, residual {r_plus:.3g}")
    _require(r_minus < TOL, f"F|xi-> != (-1)^n |xi->, residual {r_minus:.3g}")


def check_displacement_hermiticity(field, conv):
    for p in _points(field):
        d = pauli.displacement(p, conv).matrix
        err = np.abs(d - d.conj().T).max()
        _require(err < TOL, lambda: f"Hermiticity fails for D{_pt(p)}: max|D - D^dag| = "
                 f"{err:.3g}\nD =\n{_fmt(d)}")
        _require(np.abs(d.conj().T @ d - np.eye(field.order)).max() < TOL,
                 f"D{_pt(p)} is not unitary")


def check_phase_constraint(field, conv):
    for p in _points(field):
        phi = pauli.phase_phi(p, conv)
        _require(abs(phi ** 2 - gf.character(p.alpha * p.beta)) < TOL,
                 f"phi^2 = {phi ** 2} != chi(alpha beta) at {_pt(p)}")
        if p.alpha.value == 0 or p.beta.value == 0:
            _require(abs(phi - 1) < TOL, f"phi{_pt(p)} = {phi}, expected 1")
        if conv.rule == "i^w":
            _require(np.abs(pauli.displacement(p, conv).matrix
                            - pauli.displacement_factorized(p, conv).matrix).max() < 1e-14,
                     f"Kronecker D differs at {_pt(p)}")


def check_displacement_basis(field, conv):
    ds = np.array([pauli.displacement(p, conv).matrix for p in _points(field)])
    gram = np.einsum("aji,bji->ab", ds.conj(), ds) / field.order
    _require(np.abs(gram - np.eye(len(ds))).max() < TOL,
             "displacement operators are not trace-orthonormal")


def check_squeezing(field, conv):
    plus, minus = hilbert.coherent_plus(field.n), hilbert.coherent_minus(field.n)
    for lam in field:
        if lam.value == 0:
            continue
        s = pauli.squeeze_op(lam)
        sd = s.dag
        _require(s.is_unitary(), f"S({lam!r}) not unitary")
        for a in field:
            lhs = (sd @ pauli.z_op(a) @ s).matrix
            _require(np.array_equal(lhs, pauli.z_op(a * lam.inverse()).matrix),
                     f"S^dag Z_a S != Z_(a/lambda) at a={a!r}, lambda={lam!r}")
            lhs = (sd @ pauli.x_op(a) @ s).matrix
            _require(np.array_equal(lhs, pauli.x_op(a * lam).matrix),
                     f"S^dag X_a S != X_(a lambda) at a={a!r}, lambda={lam!r}")
            for st in (plus, minus):
                ex = (sd @ pauli.x_op(a) @ s).expect(st)
                ez = (sd @ pauli.z_op(a * lam * lam) @ s).expect(st)
                _require(abs(ex - ez) < TOL,
                         f"<S^dag X_a S> != <S^dag Z_(a lambda^2) S> at a={a!r}, lambda={lam!r}")


# --- wigner ---------------------------------------------------------------

def check_kernels(field, conv):
    total = np.zeros((field.order, field.order), dtype=complex)
    for p in _points(field):
        k = wigner.kernel(p, conv).matrix
        err = np.abs(k - k.conj().T).max()
        _require(err < 1e-14, lambda: f"Hermiticity fails for Delta{_pt(p)}: "
                 f"max|Delta - Delta^dag| = {err:.3g}\nDelta =\n{_fmt(k)}")
        _require(abs(np.trace(k) - 1) < TOL, f"Tr Delta{_pt(p)} = {np.trace(k)}")
        total += k
    _require(np.abs(total - field.order * np.eye(field.order)).max() < 1e-10,
             "sum of kernels != 2^n I")


def _test_states(n):
    rng = np.random.default_rng(1234 + n)
    states = [hilbert.coherent_plus(n), hilbert.coherent_minus(n),
              hilbert.su2_coherent(0.4 - 0.3j, n), hilbert.dicke_state(n, n // 2)]
    v = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    states.append(hilbert.StateVector(make_field(n), v / np.linalg.norm(v)))
    return states


def check_wigner_properties(field, conv):
    n, d = field.n, field.order
    for st in _test_states(n):
        w = wigner.wigner_by_kernels(st, conv)
        _require(np.abs(w.imag).max() < TOL, f"W not real, residue {np.abs(w.imag).max():.3g}")
        _require(abs(w.real.sum() - d) < 1e-10, f"sum W = {w.real.sum()} != 2^n")
        dense = wigner.wigner_of(st, conv, method="dense").values
        _require(np.abs(dense - w.real).max() < 1e-10, "dense path differs from kernel traces")
        rho = st.density()
        over_alpha = w.real.sum(axis=0)
        _require(np.abs(over_alpha - d * np.diag(rho).real).max() < 1e-10,
                 "sum_alpha W(alpha, beta) != 2^n <beta|rho|beta>")
        f = pauli.fourier_op(field).matrix
        over_beta = w.real.sum(axis=1)
        _require(np.abs(over_beta - d * np.diag(f @ rho @ f.conj().T).real).max() < 1e-10,
                 "sum_beta W(alpha, beta) != 2^n <alpha|F rho F^dag|alpha>")
    for xi in (hilbert.XI_PLUS, 0.6 + 0.2j):
        w = wigner.wigner_by_kernels(hilbert.su2_coherent(xi, n), conv).real
        h = np.array([bin(i).count("1") for i in range(d)])
        profile = np.abs(xi) ** (2 * h) / (1 + abs(xi) ** 2) ** n
        _require(np.abs(w.sum(axis=0) - d * profile).max() < 1e-10,
                 f"beta marginal != 2^n |xi^h|^2/(1+|xi|^2)^n at xi={xi}")
        if xi == hilbert.XI_PLUS:
            _require(np.abs(w.sum(axis=1) - d * profile).max() < 1e-10,
                     "alpha marginal of |xi+> != 2^n |xi^h|^2/(1+|xi|^2)^n")


def check_covariance(field, conv):
    st = _test_states(field.n)[-1]
    base = wigner.wigner_of(st, conv, method="dense").values
    for delta in field:
        moved = pauli.x_op(delta) @ st
        w = wigner.wigner_of(moved, conv, method="dense").values
        j = field.index(delta)
        shifted = base[:, np.arange(field.order) ^ j]
        _require(np.abs(w - shifted).max() < 1e-10,
                 f"W of X_delta psi is not the beta-shifted grid at delta={delta!r}")


def check_closed_form(field, conv):
    for xi in (hilbert.XI_PLUS, 0.3 + 0.5j, 0.0):
        cf = wigner.wigner_coherent_closed_form_grid(xi, field, conv)
        mat = wigner.wigner_by_kernels(hilbert.su2_coherent(xi, field.n), conv)
        err = np.abs(cf - mat).max()
        _require(err < 1e-10, f"closed form differs from Tr[rho Delta] by {err:.3g} at xi={xi}")


def check_product_path(field, conv):
    for st in (hilbert.coherent_plus(field.n), hilbert.su2_coherent(-0.2 + 0.8j, field.n)):
        dense = wigner.wigner_of(st, conv, method="dense").values
        fac = hilbert.tensor_factor_check(st)
        try:
            fast = wigner.fast_product_path(fac, conv).values
        except ValueError as exc:
            raise CheckFailure(f"product path rejected the convention: {exc}") from None
        err = np.abs(fast - dense).max()
        _require(err < TOL, f"product path differs from dense path by {err:.3g}")


# (name, function, cap on n)
CHECKS: list[tuple[str, Callable, int]] = [
    ("gf: field axioms", check_field_axioms, 4),
    ("gf: trace", check_trace, 10),
    ("gf: character sums", check_character_sums, 10),
    ("gf: dual and self-dual bases", check_bases, 12),
    ("hilbert: coherent = Dicke expansion", check_coherent_dicke, 6),
    ("hilbert: coherent factorization", check_factorization, 6),
    ("hilbert: basis-change permutations", check_permutations, 6),
    ("pauli: Z/X group and commutation", check_pauli_group, 4),
    ("pauli: Fourier operator", check_fourier, 5),
    ("pauli: displacement Hermiticity", check_displacement_hermiticity, 4),
    ("pauli: phase constraint", check_phase_constraint, 4),
    ("pauli: displacement operator basis", check_displacement_basis, 3),
    ("pauli: squeezing relations", check_squeezing, 3),
    ("wigner: kernel Hermiticity and trace", check_kernels, 3),
    ("wigner: reality, normalization, marginals", check_wigner_properties, 4),
    ("wigner: covariance", check_covariance, 3),
    ("wigner: closed form", check_closed_form, 3),
    ("wigner: product path", check_product_path, 6),
]


def run_checks(n_max: int, *, break_phase: bool = False,
               report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    """Run every check for ``n = 1 .. min(n_max, cap)``.

    ``break_phase`` swaps in the deliberately broken phase rule so the
    suite's failure reporting can be exercised.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    results = []
    for name, fn, cap in CHECKS:
        ns = tuple(range(1, min(n_max, cap) + 1))
        t0 = time.perf_counter()
        ok, detail = True, ""
        for n in ns:
            field = make_field(n)
            conv = PhaseConvention(field.self_dual_basis,
                                   "i^(w+1)" if break_phase else "i^w")
            try:
                fn(field, conv)
            except CheckFailure as exc:
                ok, detail = False, f"n={n}: {exc}"
                break
        res = CheckResult(name, ok, ns, time.perf_counter() - t0, detail)
        results.append(res)
        if report is not None:
            report(res)
    return results
