import io
import json
from pathlib import Path

import pytest

from solcryst.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("name,argv", [
    ("z4", ["classify", "--s", "1 2 2 5", "--type", "4", "--auto-inflate", "--json"]),
    ("6bii", ["classify", "--s", "17 12 24 17", "--type", "6bi", "--auto-inflate", "--json"]),
    ("maxhol", ["classify", "--s", "3 4 2 3", "--type", "7i", "--q", "4", "--json"]),
])
def test_golden_json(name, argv):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / f"{name}.json").read_text()


def test_z4_without_inflation_exits_3():
    code, text = run("classify", "--s", "1 2 2 5", "--q", "1", "--m", "0", "0", "--json")
    assert code == 3
    rep = json.loads(text)
    sec = [s for s in rep["types"] if s["type"] == "4"][0]
    assert sec["h1_count"] == 2
    first, second = sec["classes"]
    assert len(first["groups"]) == 8
    assert second["inflation_required"] == 2


def test_z4_auto_inflate_gives_8_plus_8():
    code, text = run("classify", "--s", "1 2 2 5", "--type", "4", "--auto-inflate", "--json")
    sec = json.loads(text)["types"][0]
    assert [len(c["groups"]) for c in sec["classes"]] == [8, 8]


def test_maxhol_single_torsion_free_class():
    _, text = run("classify", "--s", "3 4 2 3", "--type", "7i", "--q", "4", "--json")
    sec = json.loads(text)["types"][0]
    free = [c["class"]["a"] for c in sec["classes"]
            if any(g["torsion"]["torsion_free"] for g in c["groups"])]
    assert free == [["1/2", "0"]]


def test_inadmissible(capsys):
    code, _ = run("classify", "--s", "1 1 0 1")
    assert code == 2
    assert "trace must exceed 2" in capsys.readouterr().err


def test_bad_type():
    assert run("classify", "--s", "2 1 1 1", "--type", "9z")[0] == 2


def test_text_output():
    code, text = run("classify", "--s", "2 1 1 1")
    assert code == 0 and "T0:" in text and "T1:" in text


def test_batch(tmp_path):
    f = tmp_path / "mats.txt"
    f.write_text("2 1 1 1\n# comment\n3 4 2 3 4 0 0\n")
    code, text = run("classify", "--batch", str(f), "--type", "0", "--json")
    assert code == 0
    reps = json.loads(text)
    assert [r["q"] for r in reps] == [1, 4]


def test_enumerate():
    code, text = run("enumerate", "--trace-max", "4", "--json")
    assert code == 0
    assert {k: len(v) for k, v in json.loads(text).items()} == {"3": 1, "4": 1}


def test_enumerate_empty(capsys):
    code, text = run("enumerate", "--trace-max", "2", "--json")
    assert code == 0 and json.loads(text) == {}
    assert "warning" in capsys.readouterr().err


def test_conjugacy():
    code, text = run("conjugacy", "--s", "2 1 1 1", "--s2", "1 1 1 2", "--json")
    out = json.loads(text)
    assert code == 0 and out["verdict"] != "NotConjugate" and out["witness"]
    _, text = run("conjugacy", "--s", "2 1 1 1", "--s2", "3 4 2 3", "--json")
    assert json.loads(text)["verdict"] == "NotConjugate"


def test_verify_small_grid():
    code, text = run("verify", "--trace-max", "6", "--entries", "4", "--q", "2")
    assert code == 0
    assert json.loads(text.strip().splitlines()[-1])["disagreements"] == 0


def test_module_entry_point():
    import subprocess
    import sys
    res = subprocess.run([sys.executable, "-m", "solcryst", "conjugacy", "--s", "2 1 1 1", "--s2", "1 1 1 2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "Conjugate" in res.stdout
