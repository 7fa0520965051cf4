import io
import json

import pytest

from doubleloop.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def payload(*argv):
    code, out, _ = run(*argv)
    return code, json.loads(out)


def test_poset_enum_top_cells():
    code, p = payload("poset", "enum", "-n", "3", "--dim", "2")
    assert code == 0 and p["count"] == 6
    assert p["schema"] == "doubleloop.poset.enum/1"


def test_lie_rank():
    code, p = payload("tensor", "lie-rank", "-n", "4")
    assert code == 0 and p["rank"] == 6


def test_dot_output():
    code, out, _ = run("poset", "hasse", "-n", "2", "--dot")
    assert code == 0 and out.startswith("digraph L2")
    code, out, _ = run("poset", "enum", "-n", "2", "--format", "dot")
    assert code == 0 and out.count("->") == 4


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["poset", "enum"],
        ["poset", "enum", "-n", "x"],
        ["poset", "enum", "-n", "20"],
        ["chains", "homology", "--space", "D", "-n", "3"],
        ["tensor", "shuffle", "--word", "1,2,3", "--component", "1,1,1"],
        ["bidelta", "magnus", "--word", "0,1", "--class", "2"],
        ["bidelta", "extension", "--gens", "1:1,2", "--quotient", "solvable"],
        ["verify", "all", "--only", "A99"],
    ],
)
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == "" and err


def test_failed_check_exits_one():
    code, p = payload("preoperad", "verify", "--max-n", "2", "--fuzz", "10")
    assert code == 1 and not p["ok"]
    bad = [law for law in p["laws"] if not law["ok"]]
    assert bad and all(law["examples"] for law in bad)


@pytest.mark.parametrize(
    "argv",
    [
        ["chains", "homology", "--space", "F", "-n", "4"],
        ["chains", "homology", "--space", "D", "-n", "3", "--set-size", "2"],
        ["chains", "shuffle-check", "-k", "4"],
        ["chains", "ladder", "--space", "F", "-n", "3"],
        ["coend", "enum", "--set-size", "2", "--max-k", "3"],
        ["coend", "exact", "--set-size", "2", "-k", "2"],
        ["tensor", "shuffle", "--word", "1,2,3"],
        ["tensor", "coproduct-check", "--max-len", "4", "--seed", "3"],
        ["bidelta", "verify-jh", "--max-level", "4", "--fuzz", "20", "--seed", "3"],
        ["bidelta", "magnus", "--word", "1,2,-1,-2", "--class", "3"],
        ["bidelta", "extension", "--gens", "0:1^2", "--cutoff", "3", "--hom", "mod:2"],
        ["verify", "all", "--only", "A1,A8,tensor-counts", "--seed", "7"],
    ],
)
def test_commands_pass_and_are_deterministic(argv):
    code1, out1, _ = run(*argv)
    code2, out2, _ = run(*argv)
    assert code1 == 0 and out1 == out2
    assert json.loads(out1)["schema"].startswith("doubleloop.")


def test_homology_payload():
    _, p = payload("chains", "homology", "--space", "F", "-n", "4")
    assert p["homology"]["betti"] == [1, 6, 11, 6]


def test_magnus_payload():
    _, p = payload("bidelta", "magnus", "--word", "1,2,-1,-2", "--class", "2")
    assert p["text"] == "1 + X1X2 - X2X1"
    assert p["malcev_coordinates"] == [0, 0, 1]


def test_extension_composite_payload():
    _, p = payload("bidelta", "extension", "--gens", "1:1,2,-1,-2", "--quotient", "nilpotent:2",
                   "--cutoff", "3", "--hom", "abelianization")
    assert p["composite"]["trivial"] and p["audit"]["ok"]
    assert [lv["hirsch_length"] for lv in p["extension"]["levels"]] == [0, 1, 3, 6]
