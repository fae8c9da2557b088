from pathlib import Path

import pytest

from codealg.cli import main

DATA = Path(__file__).resolve().parents[1] / "src" / "codealg" / "data"


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def data(name):
    return str(DATA / name)


def test_check_e1(capsys):
    status, out, _ = run(capsys, "check", "--code", data("e1.code"), "--params", data("e1.params"))
    assert status == 0
    assert "Axis Hypothesis: pass" in out and "lambda[110] = 2" in out


def test_axes_e1(capsys):
    status, out, _ = run(capsys, "axes", "--code", data("e1.code"), "--params", data("e1.params"), "--S", "110")
    assert status == 0
    assert "axis e[110,+] = 2*t1 + 2*t2 + e^110" in out
    assert "shared eigenvalue 0: 0 and (1,1)-" in out


def test_fusion_e1(capsys):
    status, out, _ = run(capsys, "fusion", "--code", data("e1.code"), "--params", data("e1.params"))
    assert status == 0
    assert "contained in predicted law: yes" in out


def test_grade_e1(capsys):
    status, out, _ = run(capsys, "grade", "--code", data("e1.code"), "--params", data("e1.params"))
    assert status == 0
    assert out.splitlines()[0] == "case (2), m=3, r=1, D_+ = {00,11}"


def test_group_f2_2(capsys):
    status, out, _ = run(capsys, "group", "--code", data("f2_2.code"), "--params", data("f2_2.params"))
    assert status == 0
    assert "order 36, probes consistent with S₃×S₃" in out
    assert "order = 36" in out and "x_closed = no" in out


def test_group_ew3x2(capsys):
    status, out, _ = run(capsys, "group", "--code", data("ew3x2.code"), "--params", data("ew.params"))
    assert status == 0
    assert "order = 576" in out and "grading = Z2xZ2" in out


def test_strip_then_recover(capsys, tmp_path):
    dump = tmp_path / "e1.dump"
    status, _, _ = run(capsys, "strip", "--code", data("e1.code"), "--params", data("e1.params"),
                       "--seed", "4", "--out", str(dump))
    assert status == 0 and dump.read_text().startswith("dim 6")
    status, out, _ = run(capsys, "recover", "--dump", str(dump), "--code", data("e1.code"))
    assert status == 0
    assert "permutation-equivalent: yes" in out


def test_deterministic(capsys):
    args = ("strip", "--code", data("ew4.code"), "--params", data("ew.params"), "--seed", "7")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    args = ("group", "--code", data("e1.code"), "--params", data("e1.params"))
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_input_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.code"
    bad.write_text("3 2\n110\n102\n")
    status, _, err = run(capsys, "check", "--code", str(bad), "--params", data("e1.params"))
    assert status == 2 and "bad generator row" in err and "3:" in err
    nota = tmp_path / "noa.params"
    nota.write_text("b = 1/4\nc = -2\n")
    status, _, err = run(capsys, "check", "--code", data("e1.code"), "--params", str(nota))
    assert status == 2 and "a is missing" in err
    status, _, _ = run(capsys, "check", "--code", data("e1.code"), "--params", str(tmp_path / "none"))
    assert status == 2
    status, _, _ = run(capsys, "check", "--code", data("e1.code"))
    assert status == 2
    status, _, err = run(capsys, "axes", "--code", data("e1.code"), "--params", data("e1.params"), "--S", "111")
    assert status == 2


def test_hypothesis_failure_exit_1(capsys, tmp_path):
    p = tmp_path / "quarter.params"
    p.write_text("a = 1/4\nb = 1/4\nc = -2\n")
    status, out, _ = run(capsys, "check", "--code", data("e1.code"), "--params", str(p))
    assert status == 1 and "[FAIL] a != 1/(2|alpha|)" in out
    status, out, _ = run(capsys, "axes", "--code", data("e1.code"), "--params", str(p))
    assert status == 1 and out.startswith("check failed")


def test_bad_command():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_census_small(capsys):
    status, out, _ = run(capsys, "census", "--max-n", "4", "--max-k", "2")
    assert status == 0
    assert "projective codes up to equivalence" in out and "case (3) instances found: 0" in out
