import math

import pytest

from oia.cli import main

BROKEN = "machine broken\nstates q0\nstart q0\nentry nonsense\n"


def test_run_exit_codes(capsys):
    assert main(["run", "--name", "centre", "--input", "bab"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Accept moves=")
    assert main(["run", "--name", "centre", "--input", "aba"]) == 1


def test_run_rejects_bad_machine_file(tmp_path, capsys):
    path = tmp_path / "broken.oia"
    path.write_text(BROKEN)
    assert main(["run", "--file", str(path), "--input", "a"]) == 5


def test_run_requires_exactly_one_source(capsys):
    assert main(["run", "--input", "a"]) == 5
    assert main(["run", "--name", "centre", "--file", "x", "--input", "a"]) == 5


def test_run_traces_are_byte_identical(capsys):
    main(["run", "--name", "pal2", "--input", "abba", "--trace"])
    first = capsys.readouterr().out
    main(["run", "--name", "pal2", "--input", "abba", "--trace"])
    second = capsys.readouterr().out
    assert first == second
    assert first.count("move=") >= 3


def test_test_subcommand(capsys):
    assert main(["test", "--name", "pal", "--max-len", "3"]) == 0
    out = capsys.readouterr().out
    assert "verdict=PASS" in out


def test_validate_subcommand(tmp_path, capsys):
    good = tmp_path / "ok.oia"
    good.write_text(
        "machine ok\nalphabet a\nstates q0 qa qr\nstart q0\naccept qa\nreject qr\n"
        "detector_start 0 2\nbudget 2\n"
        "entry q0 CENT 0 -> qa head=0 det=0,0 toggle=-\n"
    )
    assert main(["validate", str(good)]) == 0
    bad = tmp_path / "bad.oia"
    bad.write_text(
        "machine bad\nalphabet a\nstates q0 qa qr\nstart q0\naccept qa\nreject qa\n"
        "detector_start 0 2\nbudget 2\n"
        "entry q0 CENT 0 -> qa head=0 det=3,0 toggle=-\n"
    )
    assert main(["validate", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "error" in out


def test_field_subcommand(tmp_path):
    state = tmp_path / "state.txt"
    n = 4
    state.write_text(f"n={n}\nsource 0 0\nsource {n + 1} pi\n")
    out = tmp_path / "field.csv"
    assert main(["field", str(state), "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "gx,gy,intensity"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == (2 * (n + 1) + 1) ** 2
    # zero on the bisector column where both endpoints are visible
    for gx_s, gy_s, val_s in rows:
        gx, gy, val = int(gx_s), int(gy_s), float(val_s)
        if gx == n + 1 and gy >= n + 1:
            assert val < 1e-9
    # sentinel at the coincident point of an ON source
    state2 = tmp_path / "state2.txt"
    state2.write_text("n=2\nsource 1 0\n")
    assert main(["field", str(state2), "--out", str(out)]) == 0
    data = {
        (int(a), int(b)): float(c)
        for a, b, c in (l.split(",") for l in out.read_text().splitlines()[1:])
    }
    assert data[(2, 0)] == -1.0
    assert data[(2, 2)] == pytest.approx(1.0, rel=1e-9)


def test_field_output_matches_lambda_flag(tmp_path, capsys):
    state = tmp_path / "state.txt"
    state.write_text("n=1\nsource 1 0\n")
    assert main(["field", str(state), "--lambda", str(2 * math.pi)]) == 0
    assert "gx,gy,intensity" in capsys.readouterr().out


def test_field_rejects_malformed_statefile(tmp_path):
    state = tmp_path / "state.txt"
    state.write_text("n=2\nsource 9 0\n")
    assert main(["field", str(state)]) == 5
    state.write_text("source 1 0\n")
    assert main(["field", str(state)]) == 5
