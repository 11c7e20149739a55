import json
import subprocess
import sys

import pytest

from halfshuffle import cli, identities
from halfshuffle.words import FreeElement


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hall_listing(capsys):
    code, out, _ = run(capsys, "hall", "--alphabet", "2", "--order", "lyndon", "--max-degree", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    assert all(len(line.split("\t")) == 3 for line in lines)
    assert {line.split("\t")[1] for line in lines} == {"1", "2", "12", "112", "122"}


def test_factorize_worked_word(capsys):
    code, out, _ = run(capsys, "factorize", "233212222111", "--alphabet", "3")
    assert code == 0
    assert out.splitlines()[0] == "233 2 12222 1^3"


def test_verify_letters(capsys):
    code, out, _ = run(capsys, "verify", "--identity", "area-jacobi", "--letters", "1", "2", "3", "--alphabet", "3")
    assert code == 0
    assert out.strip() == "residual: 0"


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(identities, "verify", lambda name, args: FreeElement.letter(1))
    code, out, _ = run(capsys, "verify", "--identity", "chain-rule", "--letters", "1", "2", "3", "--alphabet", "3")
    assert code == 1
    assert out.strip() == "residual: 1"


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["factorize", "1x2"],
        ["factorize", "13", "--alphabet", "2"],
        ["verify", "--identity", "tortkara-2", "--letters", "1", "2"],
        ["verify", "--identity", "no-such"],
        ["hall", "--order", "random"],
        ["dual", "--verify-duality", "2-3"],
        ["sig", "13", "--alphabet", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = cli.main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2
    assert capsys.readouterr().err


def test_json_outputs(capsys):
    code, out, _ = run(capsys, "pbw", "12", "--json")
    assert code == 0
    assert json.loads(out) == [{"word": "12", "coeff": "1/1"}, {"word": "21", "coeff": "-1/1"}]
    code, out, _ = run(capsys, "eliminate", "21", "--c", "2", "--alphabet", "2", "--json")
    data = json.loads(out)
    assert data["c"] == 2 and data["scalar_slots"] == ["0/1", "0/1"]
    code, out, _ = run(capsys, "rank-report", "--max-degree", "3", "--json", "--expect-full-rank")
    assert code == 0
    rows = json.loads(out)
    rows = rows["rows"] if isinstance(rows, dict) else rows
    assert [r["rank"] for r in rows] == [2, 4, 8]


def test_expand_and_dual(capsys):
    code, out, _ = run(capsys, "dual", "21")
    assert code == 0 and out.strip() == "12 + 21"
    code, out, _ = run(capsys, "expand", "21")
    assert code == 0 and "round trip: ok" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--alphabet", "2", "--random", "20", "--seed", "3", "--json"],
        ["sig", "12 + 2", "--level", "2", "--seed", "3", "--json"],
        ["dual", "--expand-random", "5", "--seed", "9", "--json"],
        ["worked-example", "--json"],
    ],
)
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert first[0] == 0
    json.loads(first[1])


def test_checks_pass(capsys):
    for argv in (
        ["hall", "--witt-check", "2:6", "3:4"],
        ["rewrite-areas", "--beta", "20", "--check-words", "3", "--check-instances", "2"],
        ["dual", "--verify-duality", "2:4", "--compare-strategies"],
        ["eliminate", "--self-check", "3", "--alphabet", "3", "--max-len", "3"],
        ["sig", "--check-suite"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0, (argv, out)


def test_csv_path(capsys, tmp_path):
    p = tmp_path / "axis.csv"
    p.write_text("x,y\n0,0\n1,0\n1,1\n")
    code, out, _ = run(capsys, "sig", "12 - 21", "--csv", str(p), "--level", "2", "--json")
    assert code == 0
    assert json.dumps(json.loads(out))  # valid JSON
    assert abs(json.loads(out)["value"] - 1.0) < 1e-12


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "halfshuffle", "factorize", "21"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "2 1"
