from __future__ import annotations

import subprocess
import sys

import numpy as np
import pytest

from conftest import get_code
from schubcode.cli import main
from schubcode.formats import read_words, write_words


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params(capsys):
    code, out, _ = run(["params", "--q", "2", "--m", "4", "--alpha", "2,4"], capsys)
    assert code == 0 and out.strip() == "n=19 k=5 d=8 delta=3 J=7 t=3 t_d=3"
    code, out, _ = run(["params", "--q", "2", "--m", "5", "--alpha", "3,5"], capsys)
    assert "d=32" in out and "J=29 t=14 t_d=15" in out
    code, out, _ = run(["params", "--q", "2", "--m", "4"], capsys)
    assert out.startswith("n=35 k=6 d=16")


@pytest.mark.parametrize(
    "args",
    [
        ["params", "--q", "2", "--m", "4", "--alpha", "1,2"],
        ["params", "--q", "6", "--m", "4", "--alpha", "2,4"],
        ["params", "--q", "2", "--m", "4", "--alpha", "x"],
        ["params", "--m", "4"],
        ["checks", "--q", "2", "--m", "4", "--alpha", "1,4"],
        ["simulate", "--q", "2", "--m", "4", "--alpha", "2,4", "--t", "40"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(args, capsys):
    with pytest.raises(SystemExit) as ex:
        sys.exit(main(args))
    assert ex.value.code == 1


def test_build_checks_decode_pipeline(tmp_path, capsys):
    g, c, w, o, log = (tmp_path / s for s in ("g", "c", "w", "o", "log"))
    assert main(["build", "--q", "2", "--m", "4", "--alpha", "2,4", "--out", str(g)]) == 0
    assert main(["checks", "--q", "2", "--m", "4", "--alpha", "2,4", "--out", str(c)]) == 0
    code = get_code(2, 4, (2, 4))
    C = code.encode([[1, 0, 1, 1, 0], [0, 1, 1, 0, 1], [0, 0, 0, 0, 0]])
    # noiseless file decodes to itself
    write_words(C, w)
    assert main(["decode", "--generator", str(g), "--checks", str(c), "--in", str(w), "--out", str(o)]) == 0
    assert o.read_text() == w.read_text()
    R = C.copy()
    R[0, 3] ^= 1
    R[1, [0, 5, 9]] ^= 1
    write_words(R, w)
    args = ["decode", "--generator", str(g), "--checks", str(c), "--in", str(w), "--out", str(o), "--log", str(log)]
    assert main(args) == 0
    assert (read_words(o) == C).all()
    lines = log.read_text().splitlines()
    assert lines[0] == "word 0 in_code=1 corrections=1 3:1(7/7)"
    assert lines[1].startswith("word 1 in_code=1 corrections=3")


def test_io_errors_exit_3(tmp_path, capsys):
    g = tmp_path / "g"
    main(["build", "--q", "2", "--m", "4", "--alpha", "2,4", "--out", str(g)])
    code, _, err = run(["decode", "--generator", str(g), "--checks", str(tmp_path / "none"), "--in", str(g)], capsys)
    assert code == 3
    bad = tmp_path / "c"
    bad.write_text("2 4 2 2 4 1\nP 0 1\nw 0:1 1:x\n")
    code, _, err = run(["decode", "--generator", str(g), "--checks", str(bad), "--in", str(g)], capsys)
    assert code == 3 and ":3:" in err


def test_header_mismatch_is_usage_error(tmp_path, capsys):
    g, c, w = tmp_path / "g", tmp_path / "c", tmp_path / "w"
    main(["build", "--q", "2", "--m", "4", "--alpha", "2,4", "--out", str(g)])
    main(["checks", "--q", "2", "--m", "5", "--alpha", "2,5", "--out", str(c)])
    w.write_text("")
    code, _, err = run(["decode", "--generator", str(g), "--checks", str(c), "--in", str(w)], capsys)
    assert code == 1 and "does not match" in err


def test_simulate_reproducible(tmp_path, capsys):
    args = ["simulate", "--q", "2", "--m", "5", "--alpha", "2,5", "--t", "7", "--trials", "2000", "--seed", "1"]
    a = run(args + ["--out", str(tmp_path / "a")], capsys)
    b = run(args + ["--out", str(tmp_path / "b")], capsys)
    assert a[0] == b[0] == 0 and a[1] == b[1]
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()
    assert "exact expected=2000 observed=2000 status=pass" in a[1]


def test_simulate_default_seed_printed(capsys):
    code, out, _ = run(["simulate", "--q", "2", "--m", "4", "--alpha", "2,4", "--trials", "100"], capsys)
    assert code == 0 and out.startswith("SEED ")


def test_verify_all(capsys):
    code, out, _ = run(["verify", "--suite", "all", "--q", "2", "--m", "4", "--alpha", "2,4", "--trials", "200"], capsys)
    assert code == 0 and "fail=0" in out.splitlines()[-1] and "status=warn" in out


def test_verify_failure_exit_2(monkeypatch, capsys):
    import schubcode.cli as cli
    from schubcode.oracleverify import Report

    def broken(*a, **k):
        rep = Report()
        rep.add("x", 1, 2)
        return rep

    monkeypatch.setattr(cli, "run_suite", broken)
    code, _, _ = run(["verify", "--q", "2", "--m", "4", "--alpha", "2,4"], capsys)
    assert code == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "schubcode", "params", "--q", "3", "--m", "4", "--alpha", "2,4"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "J=10 t=5" in res.stdout
