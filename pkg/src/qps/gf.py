"""Arithmetic in the binary Galois fields GF(2^n).

Elements are stored as integer bit masks in the polynomial representation:
bit ``j`` of the mask is the coefficient of ``x**j`` modulo the field's
irreducible polynomial.  Scalar arithmetic goes through carry-less
multiplication and reduction; the array helpers on :class:`GaloisField` use
log/antilog tables built once when the field is constructed.

Besides arithmetic the module provides the absolute trace, the additive
characters ``chi(a) = (-1)**tr(a)``, coordinate maps for arbitrary bases,
dual bases and a self-dual basis.  The self-dual basis fixes the canonical
ordering of field elements used everywhere else in the package: the element
at index ``i`` is the one whose self-dual coordinates are the bits of ``i``
(least significant bit first).

Examples
--------
>>> F = make_field(2)
>>> s = F.sigma
>>> s * s == s + F.one
True
>>> trace(s), character(s)
(1, -1)
"""
from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "MAX_FIELD_DEGREE", "PRIMITIVE_POLYS",
    "GaloisField", "FieldElement", "Basis",
    "InvalidBasisError", "SelfDualBasisError",
    "make_field", "load_poly_table", "is_irreducible",
    "add", "mul", "inv", "pow", "trace", "character",
    "coordinates", "from_coordinates", "gram_matrix",
    "polynomial_basis", "normal_basis", "dual_basis", "self_dual_basis",
    "enumerate_elements",
]

MAX_FIELD_DEGREE = 12

# Primitive polynomials, bit j = coefficient of x**j.
PRIMITIVE_POLYS = {
    1: 0b11,                # x + 1
    2: 0b111,               # x^2 + x + 1
    3: 0b1011,              # x^3 + x + 1
    4: 0b10011,             # x^4 + x + 1
    5: 0b100101,            # x^5 + x^2 + 1
    6: 0b1000011,           # x^6 + x + 1
    7: 0b10000011,          # x^7 + x + 1
    8: 0b100011101,         # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,        # x^9 + x^4 + 1
    10: 0b10000001001,      # x^10 + x^3 + 1
    11: 0b100000000101,     # x^11 + x^2 + 1
    12: 0b1000001010011,    # x^12 + x^6 + x^4 + x + 1
}


class InvalidBasisError(ValueError):
    """Raised when a list of field elements is not a basis over Z_2."""


class SelfDualBasisError(RuntimeError):
    """Raised if the self-dual construction fails; indicates a bug."""


# ---------------------------------------------------------------------------
# polynomials over Z_2 as int bit masks
# ---------------------------------------------------------------------------

def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _polymod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _polygcd(a: int, b: int) -> int:
    while b:
        a, b = b, _polymod(a, b)
    return a


def _prime_factors(m: int) -> list[int]:
    out = []
    q = 2
    while q * q <= m:
        if m % q == 0:
            out.append(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(poly: int) -> bool:
    """Rabin's irreducibility test for a polynomial over Z_2 (bit mask)."""
    n = poly.bit_length() - 1
    if n < 1:
        return False

    def frob(k):
        # x^(2^k) mod poly
        r = _polymod(0b10, poly)
        for _ in range(k):
            r = _polymod(_clmul(r, r), poly)
        return r

    if frob(n) != _polymod(0b10, poly):
        return False
    for q in _prime_factors(n):
        if _polygcd(poly, frob(n // q) ^ 0b10) != 1:
            return False
    return True


def _popcount_parity(v: np.ndarray) -> np.ndarray:
    v = v.astype(np.int64, copy=True)
    p = np.zeros_like(v)
    while np.any(v):
        p ^= v & 1
        v >>= 1
    return p


def _gf2_inverse(rows: Sequence[int], n: int) -> list[int]:
    """Invert an n x n matrix over Z_2 given as row bit masks (bit j = column j).

    Raises ``InvalidBasisError`` when the matrix is singular.
    """
    a = list(rows)
    b = [1 << i for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r] >> col & 1), None)
        if piv is None:
            raise InvalidBasisError("matrix is singular over Z_2")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        for r in range(n):
            if r != col and a[r] >> col & 1:
                a[r] ^= a[col]
                b[r] ^= b[col]
    return b


# ---------------------------------------------------------------------------
# field and elements
# ---------------------------------------------------------------------------

class GaloisField:
    """The field GF(2^n) built as Z_2[x] modulo an irreducible polynomial.

    Instances are immutable after construction.  Use :func:`make_field`
    rather than the constructor so that identical fields are shared.

    Attributes
    ----------
    n : int
        Extension degree.
    poly : int
        Irreducible polynomial as a bit mask with bit ``n`` set.
    order : int
        Number of elements, ``2**n``.
    generator : int
        Bit mask of the primitive element.  This is the residue class of
        ``x`` whenever ``poly`` is primitive, which holds for the built-in
        table.
    """

    def __init__(self, n: int, poly: int | None = None):
        if not 1 <= n <= MAX_FIELD_DEGREE:
            raise ValueError(
                f"extension degree n={n} out of range; supported 1 <= n <= "
                f"{MAX_FIELD_DEGREE}")
        if poly is None:
            poly = PRIMITIVE_POLYS[n]
        if poly.bit_length() - 1 != n:
            raise ValueError(f"polynomial {poly:#x} does not have degree {n}")
        if not is_irreducible(poly):
            raise ValueError(f"polynomial {poly:#x} is reducible over Z_2")
        self.n = n
        self.poly = poly
        self.order = 1 << n
        self.generator = self._find_generator()
        self._build_tables()
        self._sd_basis = None
        self._sd_basis = self._compute_self_dual_basis()
        self.elements = self._sd_basis.decode_table()
        self.position = np.empty(self.order, dtype=np.int64)
        self.position[self.elements] = np.arange(self.order)

    # construction helpers -------------------------------------------------

    def _reduce(self, a: int) -> int:
        return _polymod(a, self.poly)

    def _mul(self, a: int, b: int) -> int:
        return _polymod(_clmul(a, b), self.poly)

    def _pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._mul(r, a)
            a = self._mul(a, a)
            k >>= 1
        return r

    def _is_primitive(self, g: int) -> bool:
        m = self.order - 1
        if self._pow(g, m) != 1:
            return False
        return all(self._pow(g, m // q) != 1 for q in _prime_factors(m))

    def _find_generator(self) -> int:
        x = self._reduce(0b10)
        if self._is_primitive(x):
            return x
        for g in range(1, self.order):
            if self._is_primitive(g):
                return g
        raise RuntimeError("no primitive element found")  # pragma: no cover

    def _build_tables(self):
        m = self.order - 1
        exp = np.zeros(2 * m + 1, dtype=np.int64)
        log = np.full(self.order, -1, dtype=np.int64)
        v = 1
        for k in range(m):
            exp[k] = v
            if log[v] != -1:
                raise RuntimeError("generator powers repeat")  # pragma: no cover
            log[v] = k
            v = self._mul(v, self.generator)
        exp[m:2 * m] = exp[:m]
        exp[2 * m] = exp[0]
        self._exp = exp
        self._log = log
        # trace is Z_2-linear: tr(a) = parity(a & trace_mask)
        mask = 0
        for j in range(self.n):
            if self._trace_by_definition(1 << j):
                mask |= 1 << j
        self.trace_mask = mask
        self._trace_table = _popcount_parity(
            np.arange(self.order, dtype=np.int64) & mask)

    def _trace_by_definition(self, a: int) -> int:
        a = self._reduce(a)
        s = t = a
        for _ in range(self.n - 1):
            t = self._mul(t, t)
            s ^= t
        if s not in (0, 1):
            raise RuntimeError("trace left the prime field")  # pragma: no cover
        return s

    def _compute_self_dual_basis(self) -> "Basis":
        return _self_dual_from(polynomial_basis(self))

    # public API -----------------------------------------------------------

    def __repr__(self):
        return f"GaloisField(n={self.n}, poly={self.poly:#x})"

    def __eq__(self, other):
        return (isinstance(other, GaloisField)
                and (self.n, self.poly) == (other.n, other.poly))

    def __hash__(self):
        return hash((GaloisField, self.n, self.poly))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, int(value))

    def __iter__(self):
        return iter(enumerate_elements(self))

    def __len__(self):
        return self.order

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def sigma(self) -> "FieldElement":
        """The primitive element."""
        return FieldElement(self, self.generator)

    @property
    def self_dual_basis(self) -> "Basis":
        return self._sd_basis

    def power(self, k: int) -> "FieldElement":
        """``sigma**k``."""
        return FieldElement(self, int(self._exp[k % (self.order - 1)]))

    def at(self, index: int) -> "FieldElement":
        """Element at position ``index`` of the canonical order."""
        return FieldElement(self, int(self.elements[index]))

    def index(self, a: "FieldElement | int") -> int:
        """Canonical position of an element."""
        return int(self.position[int(a)])

    # vectorised helpers on bit-mask arrays

    def mul_values(self, a, b) -> np.ndarray:
        """Elementwise product of bit-mask arrays (broadcasting)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self._log[a], self._log[b]
        out = self._exp[np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)]
        return np.where((a == 0) | (b == 0), 0, out)

    def trace_values(self, a) -> np.ndarray:
        return self._trace_table[np.asarray(a, dtype=np.int64)]

    def character_values(self, a) -> np.ndarray:
        return 1 - 2 * self.trace_values(a)


@functools.lru_cache(maxsize=None)
def make_field(n: int, poly: int | None = None) -> GaloisField:
    """Return GF(2^n), optionally for a user-supplied irreducible polynomial.

    Parameters
    ----------
    n : int
        Extension degree, ``1 <= n <= MAX_FIELD_DEGREE``.
    poly : int, optional
        Irreducible polynomial of degree ``n`` as a bit mask.  Defaults to
        the built-in primitive polynomial table.

    Raises
    ------
    ValueError
        If ``n`` is outside the supported range or ``poly`` is not an
        irreducible polynomial of degree ``n``.
    """
    return GaloisField(n, poly)


def load_poly_table(path: str | os.PathLike) -> dict[int, int]:
    """Read a polynomial table with one ``n: bitmask`` entry per line.

    Bit masks may be written in any base Python's ``int(s, 0)`` accepts.
    Blank lines and ``#`` comments are ignored.
    """
    table = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                key, value = line.split(":")
                table[int(key)] = int(value.strip(), 0)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected 'n: bitmask'") from None
    return table


@dataclass(frozen=True, eq=True)
class FieldElement:
    """An element of GF(2^n) in the polynomial representation."""

    field: GaloisField
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"{self.value} is not a reduced element of {self.field}")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other
        if isinstance(other, (int, np.integer)) and other in (0, 1):
            return FieldElement(self.field, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.value ^ other.value)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._mul(self.value, other.value))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElement(self.field, self.field._pow(self.value, k))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(2^n)")
        return self ** (self.field.order - 2)

    def __int__(self):
        return self.value

    __index__ = __int__

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Polynomial coefficients, constant term first."""
        return tuple(self.value >> j & 1 for j in range(self.field.n))

    def log(self) -> int:
        """Discrete log base the primitive element; ``-1`` for zero."""
        return int(self.field._log[self.value])

    def label(self) -> str:
        """Power label such as ``'0'``, ``'1'`` or ``'s^3'``."""
        if self.value in (0, 1):
            return str(self.value)
        k = self.log()
        return "s" if k == 1 else f"s^{k}"

    def __repr__(self):
        return f"GF{self.field.order}({self.label()})"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def pow(a: FieldElement, k: int) -> FieldElement:  # noqa: A001
    return a ** k


def trace(a: FieldElement) -> int:
    """Absolute trace ``a + a^2 + ... + a^(2^(n-1))``, as 0 or 1."""
    return int(a.field._trace_table[a.value])


def character(a: FieldElement) -> int:
    """Additive character ``(-1)**tr(a)``."""
    return 1 - 2 * trace(a)


def gram_matrix(first: Iterable[FieldElement],
                second: Iterable[FieldElement] | None = None) -> np.ndarray:
    """Matrix of ``tr(x_i * y_j)`` over Z_2."""
    first = list(first)
    second = first if second is None else list(second)
    return np.array([[trace(x * y) for y in second] for x in first], dtype=np.int64)


@dataclass(frozen=True)
class Basis:
    """An ordered basis of GF(2^n) over Z_2.

    ``kind`` is a free descriptive tag (``"polynomial"``, ``"normal"``,
    ``"dual"``, ``"self-dual"`` or ``"arbitrary"``).  A basis tagged
    ``"self-dual"`` is checked for ``tr(e_i e_j) = delta_ij``.
    """

    elements: tuple[FieldElement, ...]
    kind: str = dc_field(default="arbitrary", compare=False)

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise InvalidBasisError("empty basis")
        field = els[0].field
        if any(e.field != field for e in els):
            raise InvalidBasisError("basis elements come from different fields")
        if len(els) != field.n:
            raise InvalidBasisError(f"need {field.n} elements, got {len(els)}")
        # column k of M holds the polynomial coefficients of element k
        rows = [sum((e.value >> j & 1) << k for k, e in enumerate(els))
                for j in range(field.n)]
        try:
            decode = _gf2_inverse(rows, field.n)
        except InvalidBasisError:
            raise InvalidBasisError(
                f"elements {els} are linearly dependent over Z_2") from None
        object.__setattr__(self, "_decode_rows", tuple(decode))
        if self.kind == "self-dual" and not self.is_self_dual():
            raise InvalidBasisError(f"{els} is not self-dual")

    @property
    def field(self) -> GaloisField:
        return self.elements[0].field

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def values(self) -> tuple[int, ...]:
        return tuple(e.value for e in self.elements)

    def is_self_dual(self) -> bool:
        return bool(np.array_equal(gram_matrix(self.elements),
                                   np.eye(len(self), dtype=np.int64)))

    def encode(self, a: FieldElement | int) -> int:
        """Coordinates of ``a`` packed little-endian into an int."""
        v = int(a)
        return sum((bin(row & v).count("1") & 1) << k
                   for k, row in enumerate(self._decode_rows))

    def decode(self, index: int) -> FieldElement:
        """Element whose packed coordinates are ``index``."""
        v = 0
        for k, e in enumerate(self.elements):
            if index >> k & 1:
                v ^= e.value
        return FieldElement(self.field, v)

    def decode_table(self) -> np.ndarray:
        """Bit masks of the elements for every packed coordinate 0..2^n-1."""
        out = np.zeros(1 << len(self), dtype=np.int64)
        idx = np.arange(1 << len(self))
        for k, e in enumerate(self.elements):
            out ^= np.where(idx >> k & 1, e.value, 0)
        return out

    def encode_table(self) -> np.ndarray:
        """Packed coordinates for every element bit mask 0..2^n-1."""
        out = np.empty(1 << len(self), dtype=np.int64)
        out[self.decode_table()] = np.arange(1 << len(self))
        return out


def coordinates(a: FieldElement, basis: Basis) -> tuple[int, ...]:
    """Expansion coefficients ``(a_1, ..., a_n)`` of ``a = sum a_k theta_k``."""
    c = basis.encode(a)
    return tuple(c >> k & 1 for k in range(len(basis)))


def from_coordinates(bits: Sequence[int], basis: Basis) -> FieldElement:
    if len(bits) != len(basis):
        raise ValueError(f"expected {len(basis)} coordinates, got {len(bits)}")
    return basis.decode(sum((int(b) & 1) << k for k, b in enumerate(bits)))


def polynomial_basis(field: GaloisField) -> Basis:
    """``{1, s, ..., s^(n-1)}`` for the primitive element ``s``."""
    s = field.sigma
    return Basis(tuple(s ** k for k in range(field.n)), "polynomial")


def normal_basis(field: GaloisField, element: FieldElement | None = None) -> Basis:
    """``{a, a^2, a^4, ..., a^(2^(n-1))}``; ``a`` defaults to the first
    power of the primitive element that generates a normal basis."""
    candidates = [element] if element is not None else (
        field.power(k) for k in range(1, field.order))
    for a in candidates:
        conj = [a]
        for _ in range(field.n - 1):
            conj.append(conj[-1] * conj[-1])
        try:
            return Basis(tuple(conj), "normal")
        except InvalidBasisError:
            if element is not None:
                raise
    raise InvalidBasisError("no normal element found")  # pragma: no cover


def dual_basis(basis: Basis) -> Basis:
    """The basis ``{t'_l}`` with ``tr(t_k t'_l) = delta_kl``.

    With ``G`` the trace Gram matrix of ``basis``, the dual elements are
    ``t'_l = sum_m (G^-1)_lm t_m``.
    """
    n = len(basis)
    g = gram_matrix(basis.elements)
    rows = [sum(int(g[i, j]) << j for j in range(n)) for i in range(n)]
    ginv = _gf2_inverse(rows, n)
    field = basis.field
    out = []
    for row in ginv:
        v = 0
        for m in range(n):
            if row >> m & 1:
                v ^= basis.elements[m].value
        out.append(FieldElement(field, v))
    kind = "self-dual" if tuple(out) == basis.elements else "dual"
    return Basis(tuple(out), kind)


def _self_dual_from(start: Basis) -> Basis:
    # Orthonormalise under the trace form.  q(x) = tr(x^2) = tr(x) is additive
    # in characteristic 2, so when the remaining block is alternating we merge
    # a hyperbolic pair (u, w) with an already-found unit vector e into the
    # three orthonormal vectors e+u, e+w, e+u+w.
    field = start.field

    def b(x, y):
        return int(field._trace_table[field._mul(x, y)])

    rest = list(start.values())
    orth: list[int] = []
    while rest:
        w = next((x for x in rest if b(x, x)), None)
        if w is not None:
            rest.remove(w)
            rest = [x ^ w if b(x, w) else x for x in rest]
            orth.append(w)
            continue
        if not orth or len(rest) < 2:
            raise SelfDualBasisError("trace form is alternating on the remainder")
        u = rest.pop(0)
        w = next((x for x in rest if b(u, x)), None)
        if w is None:
            raise SelfDualBasisError("trace form is degenerate")
        rest.remove(w)
        rest = [x ^ (u if b(x, w) else 0) ^ (w if b(x, u) else 0) for x in rest]
        e = orth.pop()
        orth.extend([e ^ u, e ^ w, e ^ u ^ w])
    try:
        basis = Basis(tuple(FieldElement(field, v) for v in orth), "self-dual")
    except InvalidBasisError as exc:
        raise SelfDualBasisError(str(exc)) from exc
    return basis


def self_dual_basis(field: GaloisField) -> Basis:
    """A basis ``{s_k}`` with ``tr(s_i s_j) = delta_ij``.

    Built by symmetric elimination on the trace Gram matrix of the
    polynomial basis and checked exhaustively before it is returned.  For
    GF(4) with ``s^2 = s + 1`` the result is ``{s, s^2}``.
    """
    return field.self_dual_basis


def enumerate_elements(field: GaloisField, order: str = "canonical") -> list[FieldElement]:
    """All field elements in ``"canonical"`` or ``"power"`` order.

    Canonical order sorts by the packed self-dual coordinates.  Power order
    is ``[0, s, s^2, ..., s^(2^n - 1) = 1]``.
    """
    if order == "canonical":
        return [FieldElement(field, int(v)) for v in field.elements]
    if order == "power":
        return [field.zero] + [field.power(k) for k in range(1, field.order)]
    raise ValueError(f"unknown order {order!r}; expected 'canonical' or 'power'")
