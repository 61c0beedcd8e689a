import json

import pytest

from app import cli
from app.cli import run_command
from app.utils.graph6 import g6_encode


def run_json(capsys, *argv):
    code = run_command([*argv, "--json"])
    return code, json.loads(capsys.readouterr().out)


def test_spec_wheel_laplacian(capsys):
    code, payload = run_json(capsys, "spec", "--expr", "MC(1,1,4)", "--kind", "L")
    assert code == 0
    assert payload["kind"] == "L"
    assert payload["groups"] == [[5.0, 2], [3.0, 2], [0.0, 1]]
    assert payload["char_poly"][0] == "1"


def test_spec_table_output(capsys):
    assert run_command(["spec", "--expr", "K4"]) == 0
    out = capsys.readouterr().out
    assert "3: 1" in out
    assert "-1: 3" in out
    assert "x^4 - 6x^2 - 8x - 3" in out


def test_gen_writes_graph6(tmp_path):
    path = tmp_path / "k4.g6"
    assert run_command(["gen", "--expr", "K4", "--out", str(path)]) == 0
    assert path.read_bytes() == b"C~\n"


def test_gen_atlas(tmp_path):
    path = tmp_path / "four.g6"
    assert run_command(["gen", "--atlas", "4", "--out", str(path)]) == 0
    assert len(path.read_bytes().splitlines()) == 11


def test_cmp_star_and_c4_plus_k1(capsys, star4):
    code, payload = run_json(capsys, "cmp", "--a", g6_encode(star4).decode(), "--b", "C4+K1")
    assert code == 0
    assert payload["cospectral"] is True
    assert payload["isomorphic"] is False


def test_closed_with_check(capsys):
    code, payload = run_json(capsys, "closed", "--w", "1", "--m", "1", "--n", "4", "--kind", "Q", "--check")
    assert code == 0
    assert payload["matches_eigensolver"] is True
    assert len(payload["values"]) == 5


def test_closed_cycle(capsys):
    code, payload = run_json(capsys, "closed", "--cycle", "4")
    assert code == 0
    assert payload["values"] == [2.0, 0.0, 0.0, -2.0]


def test_hunt_k4(capsys):
    code, payload = run_json(capsys, "hunt", "--target", "K4", "--connected-only", "--workers", "1")
    assert code == 0
    assert payload["verdict"] == "unique_among_connected"
    assert payload["space"]["scanned"] == 64


def test_hunt_certify(capsys):
    code, payload = run_json(capsys, "hunt", "--target", "MC(1,1,4)", "--connected-only", "--certify", "--workers", "1")
    assert code == 0
    assert payload["expectation"] == "unique"
    assert payload["consistent"] is True


def test_invariants(capsys):
    code, payload = run_json(capsys, "invariants", "--expr", "K1~C4")
    assert code == 0
    assert payload["laplacian_facts"]["spanning_tree_count"] == 45
    assert payload["bound"]["structure_class"] == "bidegreed"


def test_perfect_wheel(capsys):
    code, payload = run_json(capsys, "perfect", "--expr", "MC(1,1,5)")
    assert code == 0
    assert payload["perfect"] is False
    assert payload["witness"]["vertices"] == [1, 2, 3, 4, 5]
    assert payload["predicate"] is False


@pytest.mark.parametrize("command", ["verify-claims", "verify-paper"])
def test_verify_subset(capsys, command):
    code, payload = run_json(capsys, command, "--only", "graph6-codec")
    assert code == 0
    assert payload["total"] == 1
    assert payload["passed"] == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["spec"],
    ["spec", "--expr", "K4", "--kind", "X"],
    ["spec", "--expr", "K3~~C4"],
    ["spec", "--g6", "C"],
    ["spec", "--expr", "C2"],
    ["spec", "--expr", "K\u00b2"],
    ["spec", "--g6", "B\u00e9"],
    ["hunt", "--target", "MC(1,1,7)"],
    ["verify-claims", "--only", "no-such-claim"],
])
def test_usage_and_input_errors(capsys, argv):
    assert run_command(argv) == 1
    assert capsys.readouterr().err


def test_help_exits_cleanly():
    assert run_command(["--help"]) == 0


def test_internal_fault_exit_code(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("solver exploded")

    monkeypatch.setattr(cli.numeric_service, "eigenvalues_numeric", boom)
    assert run_command(["spec", "--expr", "K4"]) == 2
    assert "solver exploded" in capsys.readouterr().err
