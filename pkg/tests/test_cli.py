import json
import subprocess
import sys

import pytest

from gameaxioms.cli import main
from gameaxioms.fileformat import parse_game_file

PD = """players: 2
actions: 2 2
labels 1: C D
labels 2: C D
payoffs 1: 3 0 4 1
payoffs 2: 3 4 0 1
"""

CO = """players: 2
actions: 2 2
labels 1: A B
labels 2: A B
payoffs 1: 2 0 0 1
payoffs 2: 1 0 0 2
"""

# PD plus z(5, 1, C) and z(-2, 2, D)
PD_PLUS_Z = """players: 2
actions: 2 2
labels 1: C D
labels 2: C D
payoffs 1: 8 0 9 1
payoffs 2: 3 4 -2 -1
"""


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("pd", PD), ("co", CO), ("pdz", PD_PLUS_Z)):
        path = tmp_path / f"{name}.game"
        path.write_text(text)
        out[name] = str(path)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_prisoners_dilemma(files, capsys):
    code, out, _ = run(capsys, "analyze", files["pd"])
    assert code == 0
    assert "pir: (1, 1)" in out
    assert "PNE: {(D,D)}" in out
    code, out, _ = run(capsys, "analyze", files["pd"], "--json")
    data = json.loads(out)
    assert data["pir"] == ["1", "1"]
    assert data["pne"] == [{"kind": "pure", "spec": "D,D"}]
    assert data["ce_welfare"]["spec"] == "1@D,D"


def test_equiv_certificate_and_refutation(files, capsys):
    code, out, _ = run(capsys, "equiv", files["pd"], files["pdz"])
    assert code == 0
    assert "z(5, 1, (C))" in out and "z(-2, 2, (D))" in out
    code, out, _ = run(capsys, "equiv", files["pd"], files["co"])
    assert code == 1
    assert "not strategically equivalent" in out


def test_witness_nudi_writes_an_equivalent_game(files, capsys):
    target = files["dir"] / "w.game"
    code, out, _ = run(capsys, "witness", "nudi", files["pd"], "--behavior", "C,C",
                       "--player", "1", "--action", "D", "--write", str(target))
    assert code == 0 and "verified: yes" in out
    code, _, _ = run(capsys, "equiv", files["pd"], str(target))
    assert code == 0
    v = parse_game_file(target.read_text()).game
    assert v.payoff(0, (0, 0)) == -1


def test_witness_defaults_to_the_first_violation(files, capsys):
    code, out, _ = run(capsys, "witness", "nudi", files["pd"], "--behavior", "1/2,1/2;1/2,1/2", "--json")
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_witness_precondition_failure_exits_one(files, capsys):
    code, out, _ = run(capsys, "witness", "nudi", files["pd"], "--behavior", "D,D")
    assert code == 1 and "precondition not met" in out
    code, out, _ = run(capsys, "witness", "nudi", files["pd"], "--behavior", "D,D", "--player", "1", "--action", "C")
    assert code == 1


def test_witness_pirar(files, capsys):
    code, out, _ = run(capsys, "witness", "pirar", files["pd"], "--behavior", "1/2@C,C 1/2@D,D",
                       "--player", "1", "--recommendation", "C", "--action", "D")
    assert code == 0 and "certificate: pirar" in out
    code, _, err = run(capsys, "witness", "pirar", files["pd"], "--behavior", "C,C")
    assert code == 2 and "correlated" in err


def test_elevate_and_contradict(files, capsys):
    code, out, _ = run(capsys, "elevate", files["co"], "--profile", "B,B")
    assert code == 0 and "certificate: sm" in out
    code, _, _ = run(capsys, "elevate", files["pd"], "--profile", "C,C")
    assert code == 1
    a, b = files["dir"] / "a.game", files["dir"] / "b.game"
    code, out, _ = run(capsys, "contradict", files["co"], "--a", "A,A", "--b", "B,B", "--write", str(a), str(b))
    assert code == 0 and out.count("verified: yes") == 2
    assert run(capsys, "equiv", str(a), str(b))[0] == 0
    assert run(capsys, "contradict", files["pd"], "--a", "D,D", "--b", "C,C")[0] == 1


def test_verify_p4(capsys):
    code, out, _ = run(capsys, "verify", "--prop", "P4", "--seed", "7", "--count", "20")
    assert code == 0
    assert "games: 20" in out


def test_audit_exit_codes(capsys):
    code, out, _ = run(capsys, "audit", "--map", "pne", "--axiom", "SE", "--seed", "1", "--count", "10",
                       "--budget", "3")
    assert code == 0 and "PassedBudget" in out
    code, out, _ = run(capsys, "audit", "--map", "welfare_max", "--axiom", "SE", "--seed", "1",
                       "--count", "10", "--budget", "3", "--json")
    assert code == 1 and json.loads(out)["status"] == "Violated"


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["audit", "--map", "nope", "--axiom", "SE"],
    ["audit", "--map", "pne", "--axiom", "PIRAR"],
    ["verify", "--prop", "P9"],
    ["analyze", "/nonexistent/file.game"],
    ["witness", "nudi", "{pd}", "--behavior", "X,Y"],
    ["witness", "nudi", "{pd}", "--behavior", "C,C", "--player", "3", "--action", "C"],
    ["elevate", "{pd}", "--profile", "C"],
    ["equiv", "{pd}", "{bad}"],
])
def test_usage_errors_exit_two(files, capsys, argv):
    bad = files["dir"] / "bad.game"
    bad.write_text("players: 2\nactions: 2 2\npayoffs 1: 1 2 3\npayoffs 2: 1 2 3 4\n")
    argv = [a.format(pd=files["pd"], bad=str(bad)) for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_bad_file_error_mentions_position(files, capsys):
    bad = files["dir"] / "bad.game"
    bad.write_text("players: 1\nactions: 2\npayoffs 1: 1 3/0\n")
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 3, column 14" in err


def test_output_is_deterministic(files, capsys):
    first = run(capsys, "audit", "--map", "maximin_play", "--axiom", "PIR", "--seed", "3", "--count", "8", "--json")
    second = run(capsys, "audit", "--map", "maximin_play", "--axiom", "PIR", "--seed", "3", "--count", "8", "--json")
    assert first == second


def test_module_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "gameaxioms", "analyze", files["pd"]],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "PNE: {(D,D)}" in out.stdout
