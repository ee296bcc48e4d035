import csv
import io
import subprocess
import sys

import pytest

from translogistic.cli import EXIT_OK, EXIT_SOLVER, EXIT_USAGE, main


def _rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_simulate_static(capsys):
    assert main(["simulate", "static", "--eps", "0.05", "--steps", "4"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["n", "y"]
    assert len(rows) == 6
    assert float(rows[1][1]) == pytest.approx(2 / 3)


def test_simulate_dynamic_to_file(tmp_path):
    out = tmp_path / "orbit.csv"
    assert main(["simulate", "dynamic", "--eps", "0.001", "--steps", "10", "--out", str(out)]) == EXIT_OK
    assert len(_rows(out.read_text())) == 12


def test_simulate_escape_is_solver_failure(capsys):
    assert main(["simulate", "dynamic", "--eps", "0.01", "--steps", "200"]) == EXIT_SOLVER
    assert "error" in capsys.readouterr().err


def test_approx(capsys):
    assert main(["approx", "static2", "--eps", "0.05", "--steps", "20"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["n", "x", "exact", "approx", "error"]
    assert max(float(r[4]) for r in rows[1:]) < 1e-3


def test_approx_wrong_regime(capsys):
    assert main(["approx", "static2", "--eps", "0.5"]) == EXIT_SOLVER
    assert "sqrt(6)" in capsys.readouterr().err


def test_weights(capsys):
    assert main(["weights", "per4", "--eps-grid", "0.1:0.5:5"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["eps", "re_f", "im_f", "region"]
    assert [r[3] for r in rows[1:]] == ["R1", "R1", "R2", "R2", "R3"]


def test_weights_dynamic(capsys):
    assert main(["weights", "dynamic", "--eps-grid", "0.5:1.5:3"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["z", "re_B", "im_B"]
    assert float(rows[1][1]) > 0 > float(rows[3][1])


def test_landmarks(capsys):
    assert main(["landmarks", "--eps", "0.001"]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[1][2:] == ["31", "116", "246"]
    assert main(["landmarks", "--eps", "0.001", "--grouping", "literal"]) == EXIT_OK
    assert _rows(capsys.readouterr().out)[1][2:] == ["31", "12", "142"]


def test_sweep_with_reference(tmp_path, capsys):
    ref = tmp_path / "ref.csv"
    ref.write_text("eps,error\n0.02,1e-6\n0.04,1e-5\n")
    assert main(["sweep", "static2", "--eps-grid", "0.02:0.04:2", "--steps", "200", "--ref", str(ref)]) == EXIT_OK
    rows = _rows(capsys.readouterr().out)
    assert rows[0] == ["eps", "max_error", "argmax_n", "reference"]
    assert [r[3] for r in rows[1:]] == ["9.9999999999999995e-07", "1.0000000000000001e-05"]


def test_sweep_dynamic_columns(capsys):
    assert main(["sweep", "dynamic", "--eps", "0.004"]) == EXIT_OK
    assert _rows(capsys.readouterr().out)[0][3:] == ["err_n1", "err_n2", "err_n3"]


def test_sweep_bad_reference(tmp_path, capsys):
    ref = tmp_path / "ref.csv"
    ref.write_text("x,y\n")
    assert main(["sweep", "static2", "--eps", "0.05", "--ref", str(ref)]) == EXIT_USAGE
    assert "line 1" in capsys.readouterr().err


def test_missing_reference_file(tmp_path):
    assert main(["sweep", "static2", "--eps", "0.05", "--steps", "5", "--ref", str(tmp_path / "no.csv")]) == EXIT_USAGE


def test_figure(tmp_path, capsys):
    assert main(["figure", "4-per", "--out", str(tmp_path)]) == EXIT_OK
    printed = capsys.readouterr().out.split()
    assert any(p.endswith("4-per.gp") for p in printed)
    assert (tmp_path / "4-per.csv").exists()


@pytest.mark.parametrize("argv", [
    [],
    ["simulate", "static"],
    ["weights", "per8"],
    ["landmarks"],
    ["figure", "nope"],
    ["weights", "per4", "--eps-grid", "0.5:0.1:3"],
    ["simulate", "static", "--eps", "abc"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == EXIT_USAGE


def test_bad_configuration(capsys):
    assert main(["simulate", "static", "--eps", "0.05", "--y0", "1.5"]) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "translogistic", "landmarks", "--eps", "0.001"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.startswith("eps,K,n1,n2,n3\n")
