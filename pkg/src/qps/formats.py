"""Text formats for states and Wigner grids.

Every numeric value is written with 17 significant digits so files round-trip
exactly.  Grid headers carry the irreducible polynomial, the self-dual basis
and the phase convention, which together pin the payload bit for bit.

State file (``qps-state 1``)::

    qps-state 1
    n 2
    poly 0x7
    labeling 0x2 0x3
    amplitudes 4
    <re> <im>
    ...

``labeling`` lists the labelling basis elements as polynomial bit masks;
amplitude ``i`` belongs to the element with coordinates ``bits(i)`` in it.
"""
from __future__ import annotations

import json

import numpy as np

from .gf import Basis, FieldElement, make_field
from .hilbert import StateVector
from .wigner import WignerGrid

__all__ = [
    "ORIENTATION", "ASCII_RAMP",
    "format_state", "parse_state", "grid_header",
    "grid_to_csv", "grid_from_csv", "grid_to_json", "grid_to_pgm", "grid_to_ascii",
    "render",
]

ORIENTATION = "rows=alpha,cols=beta,order=self-dual-coordinates"
ASCII_RAMP = " .:-=+*#%@"


def _num(x: float) -> str:
    return format(float(x) + 0.0, ".17g")


def format_state(state: StateVector) -> str:
    f = state.field
    lines = [
        "qps-state 1",
        f"n {f.n}",
        f"poly {f.poly:#x}",
        "labeling " + " ".join(f"{v:#x}" for v in state.labeling.values()),
        f"amplitudes {f.order}",
    ]
    lines += [f"{_num(a.real)} {_num(a.imag)}" for a in state.amplitudes]
    return "\n".join(lines) + "\n"


def parse_state(text: str) -> StateVector:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    try:
        if lines[0] != "qps-state 1":
            raise ValueError("missing 'qps-state 1' magic line")
        kv = {}
        for ln in lines[1:5]:
            key, _, rest = ln.partition(" ")
            kv[key] = rest
        n = int(kv["n"])
        field = make_field(n, int(kv["poly"], 0))
        labeling = Basis(tuple(FieldElement(field, int(v, 0)) for v in kv["labeling"].split()))
        count = int(kv["amplitudes"])
        rows = [ln.split() for ln in lines[5:5 + count]]
        amps = np.array([complex(float(re), float(im)) for re, im in rows])
    except (IndexError, KeyError) as exc:
        raise ValueError(f"malformed state file: {exc}") from None
    if len(amps) != field.order:
        raise ValueError(f"state file lists {len(amps)} amplitudes, expected {field.order}")
    if labeling == field.self_dual_basis:
        labeling = field.self_dual_basis
    return StateVector(field, amps, labeling)


def grid_header(grid: WignerGrid) -> dict:
    f = grid.field
    return {
        "n": f.n,
        "poly": f"{f.poly:#x}",
        "self_dual_basis": [f"{v:#x}" for v in f.self_dual_basis.values()],
        "convention": grid.convention.id,
        "normalization": grid.normalization,
        "orientation": ORIENTATION,
    }


def _header_line(grid: WignerGrid) -> str:
    h = grid_header(grid)
    parts = [f"{k}={','.join(v) if isinstance(v, list) else v}" for k, v in h.items()]
    return "# " + " ".join(parts)


def grid_to_csv(grid: WignerGrid) -> str:
    rows = [",".join(_num(v) for v in row) for row in grid.values]
    return _header_line(grid) + "\n" + "\n".join(rows) + "\n"


def grid_from_csv(text: str) -> tuple[dict, np.ndarray]:
    """Header fields and payload of a grid CSV."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing '# ' header line")
    header = dict(tok.split("=", 1) for tok in lines[0][2:].split())
    values = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:] if ln])
    return header, values


def grid_to_json(grid: WignerGrid) -> str:
    head = json.dumps(grid_header(grid), indent=2)[:-2]
    rows = ",\n    ".join("[" + ", ".join(_num(v) for v in row) + "]" for row in grid.values)
    return f'{head},\n  "values": [\n    {rows}\n  ]\n}}\n'


def _scaled(values: np.ndarray, levels: int) -> np.ndarray:
    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.zeros(values.shape, dtype=int)
    return (values - lo) / (hi - lo) * levels


def grid_to_pgm(grid: WignerGrid) -> str:
    """Plain PGM (P2), 255 levels, ``[min, max]`` mapped linearly onto 0..255."""
    v = grid.values
    levels = np.rint(_scaled(v, 255)).astype(int)
    d = v.shape[0]
    lines = ["P2", _header_line(grid),
             f"# range min={_num(v.min())} max={_num(v.max())} linear 0..255",
             f"{d} {d}", "255"]
    lines += [" ".join(str(x) for x in row) for row in levels]
    return "\n".join(lines) + "\n"


def grid_to_ascii(grid: WignerGrid) -> str:
    v = grid.values
    idx = np.minimum(_scaled(v, len(ASCII_RAMP)).astype(int), len(ASCII_RAMP) - 1)
    lines = [_header_line(grid),
             f"# ramp '{ASCII_RAMP}' min={_num(v.min())} max={_num(v.max())}"]
    lines += ["".join(ASCII_RAMP[i] for i in row) for row in idx]
    return "\n".join(lines) + "\n"


_WRITERS = {"csv": grid_to_csv, "json": grid_to_json, "pgm": grid_to_pgm, "ascii": grid_to_ascii}


def render(grid: WignerGrid, fmt: str) -> str:
    try:
        return _WRITERS[fmt](grid)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(_WRITERS)}") from None
