import json
import subprocess
import sys

import pytest

from weylbraid.cli import VERBS, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_fold_e6(capsys):
    code, out = run(capsys, "fold", "--type", "E6", "--auto", "z2")
    assert code == 0 and out["kind"] == "F4" and out["rank"] == 4


def test_artin_equal(capsys):
    code, out = run(capsys, "artin", "equal", "--type", "A2", "--a", "1 2 1", "--b", "2 1 2")
    assert code == 0 and out == {"equal": True}


def test_excluded_fold(capsys):
    code, out = run(capsys, "fold", "--type", "A4", "--auto", "z2")
    assert code == 2 and out["error"] == "fold" and "excluded" in out["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["fold", "--type", "E6"],
        ["verify", "no-such-suite"],
        ["lattice", "embed", "--type", "A1", "--gram", "[[0,1],"],
        ["weyl", "element", "--type", "A2", "--word", "1 -2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1 and out["error"] == "usage"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["diagram", "--type", "D3"], 2),
        (["bfield", "check", "--type", "A1", "--b", "0.5"], 2),
        (["weyl", "enumerate", "--type", "E8"], 2),
        (["kodaira", "--fiber", "I3", "--perm", "1 2 0"], 2),
    ],
)
def test_domain_errors(capsys, argv, code):
    got, out = run(capsys, *argv)
    assert got == code and "error" in out and "message" in out


def test_help_lists_every_verb(capsys):
    code, out = run(capsys, "--help")
    assert code == 0
    for verb in VERBS:
        assert verb in out["usage"]


@pytest.mark.parametrize(
    "argv,key,value",
    [
        (["diagram", "--type", "~A2"], "name", "~A2"),
        (["affinize", "--type", "G2"], "name", "~G2"),
        (["kodaira", "--fiber", "I*1", "--perm", "0 1 2 3 5 4"], "name", "~B4"),
        (["weyl", "order", "--type", "F4"], "order", 1152),
        (["weyl", "fixed", "--type", "D4", "--auto", "s3"], "order", 12),
        (["weyl", "orbit", "--type", "A2", "--point", "1 0"], "size", 6),
        (["weyl", "equal", "--type", "B2", "--a", "1 2 1 2", "--b", "2 1 2 1"], "equal", True),
        (["weyl", "wall", "--type", "A2", "--node", "1"], "normal", ["2", "-1"]),
        (["artin", "normal-form", "--type", "A2", "--word", "-1"], "factors", [[1, 2]]),
        (["artin", "project", "--type", "A2", "--word", "1 -2"], "length", 2),
        (["artin", "lift", "--type", "A2", "--word", "1 2 1"], "word", ["1", "2", "1"]),
        (["artin", "michel", "--n", "2"], "generators", [["1", "4"], ["2", "3", "2"]]),
        (["lattice", "embed", "--type", "A1", "--gram", "[[0,1],[1,0]]"], "classes", [[1, -1]]),
        (["lattice", "reflect", "--type", "A2", "--node", "1", "--vector", "1 0"], "image", [-1, 0]),
        (["lattice", "twist", "--gram", "[[0,1],[1,0]]", "--mukai", "--v", "1 0 0 1", "--alpha", "1 2 3 4", "--odd", "5 6"], "odd", [5, 6]),
        (["lattice", "base-map", "--type", "A1", "--psi", "[[1,0],[0,-1]]"], "matrix", [["-1"]]),
        (["bfield", "reflect", "--type", "A1", "--gram", "[[0,1],[1,0]]", "--b", "1/2 0", "--node", "1"], "B", ["0", "1/2"]),
        (["bfield", "check", "--type", "A1", "--gram", "[[0,1],[1,0]]", "--b", "1/2 1/2"], "enhanced", True),
        (["defmodel", "census", "--type", "A2", "--genus", "2", "--point", "0 0"], "surfaces", [1, 2]),
        (["defmodel", "codim", "--type", "A2", "--genus", "2", "--node", "1"], "mismatch", True),
        (["defmodel", "orbit", "--type", "A2", "--genus", "2", "--word", "1"], "relation", "birational"),
        (["defmodel", "fixes", "--type", "A2", "--genus", "2", "--node", "1", "--point", "1 2"], "fixed", True),
        (["defmodel", "build", "--type", "G2", "--genus", "2"], "node_genus", {"1": 4, "2": 2}),
        (["verify", "kodaira"], "passed", True),
    ],
)
def test_verbs(capsys, argv, key, value):
    code, out = run(capsys, *argv)
    assert code == 0, out
    assert out[key] == value


def test_human_flag_anywhere(capsys):
    assert main(["defmodel", "census", "--type", "A2", "--genus", "2", "--human"]) == 0
    out = capsys.readouterr().out
    assert "root" in out and "count" in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "weylbraid", "fold", "--type", "D4", "--auto", "s3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "G2"
