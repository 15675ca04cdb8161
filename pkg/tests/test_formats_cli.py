import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qps import formats
from qps.cli import main
from qps.gf import Basis, make_field
from qps.hilbert import coherent_minus, coherent_plus, su2_coherent
from qps.wigner import wigner_of

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# --- formats ----------------------------------------------------------------

def test_state_round_trip():
    s = su2_coherent(0.3 + 0.7j, 3)
    back = formats.parse_state(formats.format_state(s))
    np.testing.assert_array_equal(back.amplitudes, s.amplitudes)
    assert back.field == s.field and back.is_canonical()


def test_state_round_trip_other_labeling():
    F = make_field(2)
    s = coherent_plus(2).relabel(Basis((F.sigma, F.sigma ** 3)))
    back = formats.parse_state(formats.format_state(s))
    assert not back.is_canonical()
    np.testing.assert_array_equal(back.amplitudes, s.amplitudes)
    assert back.canonical().allclose(coherent_plus(2))


@pytest.mark.parametrize("text", ["", "qps-state 2\n", "qps-state 1\nn 2\npoly 0x7\n"])
def test_state_parse_errors(text):
    with pytest.raises(ValueError):
        formats.parse_state(text)


def test_csv_round_trip_and_header():
    grid = wigner_of(coherent_minus(3))
    header, values = formats.grid_from_csv(formats.grid_to_csv(grid))
    np.testing.assert_array_equal(values, grid.values)
    assert header["n"] == "3"
    assert header["poly"] == "0xb"
    assert header["orientation"] == formats.ORIENTATION
    assert header["convention"] == grid.convention.id
    assert len(header["self_dual_basis"].split(",")) == 3


def test_json_output():
    grid = wigner_of(coherent_plus(2))
    doc = json.loads(formats.grid_to_json(grid))
    assert doc["normalization"] == "raw"
    np.testing.assert_array_equal(np.array(doc["values"]), grid.values)


def test_pgm_output():
    grid = wigner_of(coherent_plus(2))
    lines = formats.grid_to_pgm(grid).splitlines()
    assert lines[0] == "P2"
    assert "linear 0..255" in lines[2]
    assert lines[3:5] == ["4 4", "255"]
    pix = np.array([[int(x) for x in ln.split()] for ln in lines[5:]])
    assert pix.shape == (4, 4)
    assert pix.min() == 0 and pix.max() == 255
    assert pix[0, 0] == 255  # the peak sits at the origin


def test_ascii_output():
    grid = wigner_of(coherent_plus(3))
    lines = formats.grid_to_ascii(grid).splitlines()
    body = lines[2:]
    assert len(body) == 8 and all(len(r) == 8 for r in body)
    assert body[0][0] == formats.ASCII_RAMP[-1]


def test_flat_grid_renders():
    grid = wigner_of(np.eye(4) / 4)
    for fmt in ("pgm", "ascii"):
        assert formats.render(grid, fmt)
    with pytest.raises(ValueError):
        formats.render(grid, "png")


# --- cli --------------------------------------------------------------------

def test_golden_n1(capsys):
    code, out, _ = run(capsys, "wigner", "--n", "1", "--state", "coherent-plus")
    assert code == 0
    gold_header, gold = formats.grid_from_csv((GOLDEN / "wigner_n1_coherent_plus.csv").read_text())
    header, values = formats.grid_from_csv(out)
    assert header == gold_header
    np.testing.assert_allclose(values, gold, rtol=0, atol=1e-15)


def test_cli_deterministic(capsys):
    _, first, _ = run(capsys, "wigner", "--n", "3", "--state", "coherent", "--xi", "0.2-0.4j")
    _, second, _ = run(capsys, "wigner", "--n", "3", "--state", "coherent", "--xi", "0.2-0.4j")
    assert first == second


def test_cli_methods_agree(capsys):
    _, dense, _ = run(capsys, "wigner", "--n", "3", "--state", "coherent-minus",
                      "--method", "dense")
    _, prod, _ = run(capsys, "wigner", "--n", "3", "--state", "coherent-minus",
                     "--method", "product")
    a = formats.grid_from_csv(dense)[1]
    b = formats.grid_from_csv(prod)[1]
    assert np.abs(a - b).max() < 1e-12


def test_cli_unit_sum(capsys):
    _, out, _ = run(capsys, "wigner", "--n", "2", "--state", "dicke", "--k", "1",
                    "--normalization", "unit-sum")
    header, values = formats.grid_from_csv(out)
    assert header["normalization"] == "unit-sum"
    assert values.sum() == pytest.approx(1, abs=1e-12)


def test_cli_field_report(capsys):
    code, out, _ = run(capsys, "field", "--n", "3")
    assert code == 0
    assert "trace column sum: 4" in out
    assert "self-dual basis:" in out
    gf4 = run(capsys, "field", "--n", "2")[1]
    assert "polynomial basis: {1, s}" in gf4
    assert "dual of polynomial basis: {s^2, 1}" in gf4


def test_cli_state_and_state_file(capsys, tmp_path):
    path = tmp_path / "psi.txt"
    code, _, err = run(capsys, "state", "coherent-minus", "--n", "3", "--out", str(path),
                       "--check-fourier")
    assert code == 0
    assert err.startswith("fourier eigenvalue -1 residual")
    assert float(err.split()[-1]) < 1e-12
    code, out, _ = run(capsys, "wigner", "--state-file", str(path))
    assert code == 0
    direct = wigner_of(coherent_minus(3)).values
    np.testing.assert_allclose(formats.grid_from_csv(out)[1], direct, atol=1e-15)


@pytest.mark.parametrize("n,sign", [(1, "+1"), (2, "+1"), (7, "+1")])
def test_check_fourier_plus(capsys, n, sign):
    _, _, err = run(capsys, "state", "coherent-plus", "--n", str(n), "--check-fourier")
    assert err.split()[2] == sign


def test_cli_usage_errors(capsys):
    assert run(capsys, "state", "dicke", "--n", "2")[0] == 2
    assert run(capsys, "state", "coherent", "--n", "2", "--xi", "abc")[0] == 2
    assert run(capsys, "state", "dicke", "--n", "2", "--k", "5")[0] == 2
    assert run(capsys, "field", "--n", "13")[0] == 2
    assert run(capsys, "field", "--n", "2", "--poly", "0b101")[0] == 2
    assert run(capsys, "wigner", "--n", "7", "--state", "dicke", "--k", "3")[0] == 2
    assert run(capsys, "wigner", "--n", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["wigner", "--format", "png"])
    assert exc.value.code == 2


def test_cli_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "wigner", "--state-file", str(tmp_path / "missing.txt"))
    assert code == 3
    assert "I/O error" in err
    code, _, _ = run(capsys, "state", "coherent-plus", "--n", "1",
                     "--out", str(tmp_path / "no" / "such" / "dir.txt"))
    assert code == 3


def test_poly_table_env(capsys, tmp_path, monkeypatch):
    table = tmp_path / "polys.txt"
    table.write_text("4: 0b11001\n")
    monkeypatch.setenv("QPS_POLY_TABLE", str(table))
    _, out, _ = run(capsys, "field", "--n", "4")
    assert "(0x19)" in out
    _, out, _ = run(capsys, "field", "--n", "4", "--poly", "0x13")
    assert "(0x13)" in out
    monkeypatch.setenv("QPS_POLY_TABLE", str(tmp_path / "absent.txt"))
    assert run(capsys, "field", "--n", "4")[0] == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "3")
    assert code == 0
    assert "FAIL" not in out


def test_verify_break_phase(capsys):
    code, out, _ = run(capsys, "verify", "--n-max", "3", "--break-phase")
    assert code == 1
    assert "Hermiticity" in out


def test_module_entry_point():
    env = dict(os.environ, PYTHONPATH=str(Path(__file__).parents[1] / "src"))
    proc = subprocess.run([sys.executable, "-m", "qps", "verify", "--n-max", "2",
                           "--break-phase"], capture_output=True, text=True, env=env)
    assert proc.returncode == 1
    assert "Hermiticity" in proc.stdout
