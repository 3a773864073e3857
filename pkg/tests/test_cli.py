from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from twistweyl.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_weyl_json():
    code, text = run("weyl", "--type", "A1", "--lambda", "2")
    data = json.loads(text)
    assert code == 0
    assert data["dim"] == 4
    assert data["job"]["schema_version"] == 1
    assert sum(r["mult"] for r in data["character"]) == 4


def test_deterministic():
    assert run("demazure", "--type", "A3", "--aut", "order2", "--lambda", "1,0")[1] == run("demazure", "--type", "A3", "--aut", "order2", "--lambda", "1,0")[1]


@pytest.mark.parametrize("fmt,needle", [("csv", "grade,mult"), ("text", "dim: 4")])
def test_formats(fmt, needle):
    code, text = run("weyl", "--type", "A1", "--lambda", "2", "--format", fmt)
    assert code == 0 and needle in text


def test_fold_and_affine():
    code, text = run("fold", "--type", "D4", "--aut", "order3")
    assert code == 0 and json.loads(text)["result"]["g0_type"] == "G2"
    code, text = run("affine-char", "--type", "A1", "--lambda", "3")
    assert code == 0 and json.loads(text)["dim"] == 8
    code, _ = run("affine-checks", "--type", "A3", "--aut", "order2", "--lambda", "1,0")
    assert code == 0


def test_identities_and_literal():
    assert run("identities", "--type", "A3", "--aut", "order2", "--cases", "a,b")[0] == 0
    assert run("identities", "--type", "A1", "--cases", "untwisted", "--literal")[0] == 1
    assert run("identities", "--type", "A1", "--cases", "c-i")[0] == 2


def test_exit_codes():
    assert run("verify", "wd", "--type", "A3", "--aut", "order2", "--lambda", "1,0")[0] == 0
    assert run("verify", "wd", "--type", "A2", "--aut", "order2", "--lambda", "2", "--strict")[0] == 2
    assert run("verify", "restriction", "--type", "A3", "--aut", "order2", "--lambda", "0,1")[0] == 1
    code, text = run("weyl", "--type", "A3", "--aut", "order2", "--lambda", "1,1", "--bound", "1", "--max-increments", "0")
    assert code == 3 and json.loads(text)["result"]["reason"] == "unstabilized"
    assert run("weyl", "--type", "Q9", "--lambda", "1")[0] == 2
    assert run("weyl", "--type", "A1")[0] == 2


def test_lattice_cli():
    code, text = run("lattice", "--type", "A1", "--lambda", "2", "--p", "2")
    data = json.loads(text)["result"]
    assert code == 0 and data["rank"] == data["dim"] == 4
    code, text = run("lattice", "--type", "A2", "--aut", "order2", "--lambda", "2", "--p", "2")
    assert code == 2 and "p = 2" in json.loads(text)["result"]["message"]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "twistweyl", "weyl", "--type", "A1", "--lambda", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["dim"] == 2
