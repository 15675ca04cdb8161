"""Command-line interface: ``qps field | state | wigner | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import formats, gf, hilbert, pauli, verify, wigner

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

STATE_KINDS = ("coherent-plus", "coherent-minus", "coherent", "dicke")


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    return format(float(x) + 0.0, ".17g")


def resolve_field(n: int, poly: int | None = None) -> gf.GaloisField:
    """Field for ``n``; an explicit ``poly`` wins over ``$QPS_POLY_TABLE``."""
    if poly is None:
        table_path = os.environ.get("QPS_POLY_TABLE")
        if table_path:
            try:
                poly = gf.load_poly_table(table_path).get(n)
            except OSError as exc:
                raise UsageError(f"cannot read QPS_POLY_TABLE: {exc}") from None
    try:
        return gf.make_field(n, poly)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _int_auto(text: str) -> int:
    return int(text, 0)


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


# --- field ----------------------------------------------------------------

def cmd_field(args) -> int:
    field = resolve_field(args.n, args.poly)
    s = field.sigma
    lines = [
        f"GF(2^{field.n}), {field.order} elements",
        f"irreducible polynomial: {_poly_str(field.poly)}  ({field.poly:#x})",
        f"primitive element s = {field.generator:#x}; "
        f"s^{field.n} = {_poly_str(int(s ** field.n), 's')}",
        "",
        "power order:",
        f"{'element':>8} {'poly':>8} {'index':>6} {'tr':>3} {'chi':>4}",
    ]
    for x in gf.enumerate_elements(field, "power"):
        lines.append(f"{x.label():>8} {x.value:#8x} {field.index(x):>6} "
                     f"{gf.trace(x):>3} {gf.character(x):>+4d}")
    lines += ["", "canonical order (self-dual coordinates, qubit 1 first):",
              f"{'index':>6} {'element':>8} {'coords':>{field.n + 2}}"]
    for i, x in enumerate(gf.enumerate_elements(field)):
        coords = "".join(str(c) for c in gf.coordinates(x, field.self_dual_basis))
        lines.append(f"{i:>6} {x.label():>8} {coords:>{field.n + 2}}")
    tr_total = sum(gf.trace(x) for x in field)
    lines += ["", f"trace column sum: {tr_total}", ""]
    poly_b = gf.polynomial_basis(field)
    for name, basis in (("polynomial", poly_b),
                        ("dual of polynomial", gf.dual_basis(poly_b)),
                        ("normal", gf.normal_basis(field)),
                        ("self-dual", field.self_dual_basis)):
        lines.append(f"{name} basis: {{{', '.join(e.label() for e in basis)}}}")
        for row in gf.gram_matrix(basis):
            lines.append("    " + " ".join(str(v) for v in row))
    _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def _poly_str(mask: int, var: str = "x") -> str:
    terms = []
    for j in reversed(range(mask.bit_length())):
        if mask >> j & 1:
            terms.append("1" if j == 0 else var if j == 1 else f"{var}^{j}")
    return " + ".join(terms) or "0"


# --- state ----------------------------------------------------------------

def build_state(kind: str, n: int, field: gf.GaloisField, xi: str | None = None,
                k: int | None = None) -> hilbert.StateVector:
    if kind == "coherent-plus":
        return hilbert.coherent_plus(n, field=field)
    if kind == "coherent-minus":
        return hilbert.coherent_minus(n, field=field)
    if kind == "coherent":
        if xi is None:
            raise UsageError("state 'coherent' needs --xi")
        try:
            value = complex(xi.replace(" ", ""))
        except ValueError:
            raise UsageError(f"cannot parse --xi {xi!r} as a complex number") from None
        return hilbert.su2_coherent(value, n, field=field)
    if kind == "dicke":
        if k is None:
            raise UsageError("state 'dicke' needs --k")
        try:
            return hilbert.dicke_state(n, k, field=field)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown state kind {kind!r}")


def fourier_report(state: hilbert.StateVector) -> str:
    if state.n <= hilbert.MAX_DENSE_DEGREE:
        image = pauli.fourier_op(state.field) @ state
    else:
        image = pauli.apply_fourier(state)
    psi, fpsi = state.amplitudes, image.amplitudes
    overlap = np.vdot(psi, fpsi)
    sign = 1 if overlap.real >= 0 else -1
    residual = np.linalg.norm(fpsi - sign * psi)
    return f"fourier eigenvalue {sign:+d} residual {_num(residual)}\n"


def cmd_state(args) -> int:
    field = resolve_field(args.n, args.poly)
    state = build_state(args.kind, args.n, field, args.xi, args.k)
    _write(formats.format_state(state), args.out)
    if args.check_fourier:
        sys.stderr.write(fourier_report(state))
    return EXIT_OK


# --- wigner ---------------------------------------------------------------

def cmd_wigner(args) -> int:
    if args.state_file:
        try:
            with open(args.state_file) as fh:
                state = formats.parse_state(fh.read())
        except ValueError as exc:
            raise UsageError(f"{args.state_file}: {exc}") from None
        if args.n is not None and args.n != state.n:
            raise UsageError(f"--n {args.n} does not match the state file (n={state.n})")
    else:
        if args.n is None or args.state is None:
            raise UsageError("wigner needs --n and --state, or --state-file")
        field = resolve_field(args.n, args.poly)
        state = build_state(args.state, args.n, field, args.xi, args.k)
    try:
        grid = wigner.wigner_of(state, method=args.method, normalization=args.normalization)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(formats.render(grid, args.format), args.out)
    return EXIT_OK


# --- verify ---------------------------------------------------------------

def cmd_verify(args) -> int:
    def report(res):
        status = "PASS" if res.ok else "FAIL"
        ns = f"n={res.ns[0]}..{res.ns[-1]}" if res.ns else "n=-"
        print(f"{status}  {res.name}  [{ns}, {res.seconds:.2f}s]")

    results = verify.run_checks(args.n_max, break_phase=args.break_phase, report=report)
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"first counterexample ({failed[0].name}):")
        print(failed[0].detail)
        return EXIT_VERIFY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qps", description="Discrete phase space of n qubits over GF(2^n).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(p, n_required=True):
        p.add_argument("--n", type=int, required=n_required, help="number of qubits")
        p.add_argument("--poly", type=_int_auto, default=None,
                       help="irreducible polynomial bit mask overriding the built-in table")

    p = sub.add_parser("field", help="print the field tables and bases")
    add_field_args(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("state", help="write a state file")
    p.add_argument("kind", choices=STATE_KINDS)
    add_field_args(p)
    p.add_argument("--xi", help="complex xi for 'coherent', e.g. 0.5+0.2j")
    p.add_argument("--k", type=int, help="excitation number for 'dicke'")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--check-fourier", action="store_true",
                   help="print the Fourier eigenvalue and residual to stderr")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("wigner", help="compute and write a Wigner grid")
    add_field_args(p, n_required=False)
    p.add_argument("--state", choices=STATE_KINDS)
    p.add_argument("--state-file", help="read the state from a state file instead")
    p.add_argument("--xi")
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=("csv", "json", "pgm", "ascii"), default="csv")
    p.add_argument("--normalization", choices=wigner.NORMALIZATIONS, default="raw")
    p.add_argument("--method", choices=("auto", "dense", "product"), default="auto")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--break-phase", action="store_true",
                   help="testing hook: use a phase rule violating phi^2 = chi(alpha beta)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"qps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qps {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
