import json
import subprocess
import sys

import pytest

from gmlkit.cli import main
from gmlkit.serialize import dumps


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


@pytest.fixture
def fx(tmp_path, capsys):
    for name in ("figure1-kripke", "figure1-graded", "figure1-nbhd", "section6"):
        assert main(["fixture", name, "--out", str(tmp_path)]) == 0
    capsys.readouterr()
    return tmp_path


@pytest.mark.parametrize("name", ["figure1-kripke", "figure1-graded", "figure1-nbhd"])
def test_eval_three_ways(fx, capsys, name):
    code, doc, _ = run(capsys, "eval", "--model", str(fx / f"{name}.json"), "--world", "w",
                       "--formula", "(dia 3 p)")
    assert code == 0 and doc == {"status": "true", "truth": True}
    code, doc, _ = run(capsys, "eval", "--model", str(fx / f"{name}.json"), "--world", "w",
                       "--formula", "(dia 4 p)")
    assert code == 1 and doc["truth"] is False


def test_eval_errors(fx, capsys):
    model = str(fx / "figure1-kripke.json")
    assert run(capsys, "eval", "--model", model, "--world", "w", "--formula", "(dia 3")[0] == 2
    assert run(capsys, "eval", "--model", model, "--world", "zz", "--formula", "p")[0] == 2
    assert run(capsys, "eval", "--model", str(fx / "missing.json"), "--world", "w", "--formula", "p")[0] == 2
    code, doc, _ = run(capsys, "eval", "--model", str(fx / "section6-F2.json"), "--world", "c",
                       "--formula", "(dia 3 p)")
    assert code == 2 and doc["status"] == "error"


def test_malformed_model_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"type": "kripke", "worlds": ["a"], "edges": []}')
    assert run(capsys, "eval", "--model", str(bad), "--world", "a", "--formula", "p")[0] == 2
    bad.write_text("{not json")
    assert run(capsys, "eval", "--model", str(bad), "--world", "a", "--formula", "p")[0] == 2


def test_translate_kripke_to_nbhd(fx, capsys):
    code, doc, _ = run(capsys, "translate", "--from", "kripke", "--to", "nbhd",
                       "--model", str(fx / "figure1-kripke.json"))
    assert code == 0 and doc["type"] == "nbhd-core"
    assert doc["core"]["w"] == ["u1", "u2", "u3", "u4"]


def test_translate_round_trip_is_byte_identical(fx, capsys, tmp_path):
    start = (fx / "figure1-nbhd.json").read_text()
    _, _, kripke = run(capsys, "translate", "--from", "nbhd", "--to", "kripke",
                       "--model", str(fx / "figure1-nbhd.json"))
    k = tmp_path / "k.json"
    k.write_text(kripke)
    _, _, back = run(capsys, "translate", "--from", "kripke", "--to", "nbhd", "--model", str(k))
    assert back == start


def test_translate_truncation(fx, capsys):
    code, doc, _ = run(capsys, "translate", "--from", "graded", "--to", "kripke", "--cap", "3",
                       "--model", str(fx / "figure1-graded.json"))
    assert code == 0
    assert sum(1 for a, _ in doc["rel"] if a == "w@0") == 4
    assert run(capsys, "translate", "--from", "graded", "--to", "kripke",
               "--model", str(fx / "figure1-graded.json"))[0] == 2


def test_translate_non_graded_frame(fx, capsys):
    code, doc, _ = run(capsys, "translate", "--from", "nbhd", "--to", "kripke",
                       "--model", str(fx / "section6-F2.json"))
    assert code == 2 and doc["witness"]["grade"] == 2


def test_translate_wrong_source(fx, capsys):
    assert run(capsys, "translate", "--from", "graded", "--to", "kripke", "--cap", "1",
               "--model", str(fx / "figure1-kripke.json"))[0] == 2


def test_check_commands(fx, capsys):
    code, doc, _ = run(capsys, "check", "stars", "--model", str(fx / "section6-F2.json"))
    assert code == 1 and doc["failed"] == ["star5"]
    code, doc, _ = run(capsys, "check", "graded-frame", "--model", str(fx / "section6-F.json"))
    assert code == 0 and doc["core"]["a"] == ["a", "b"]
    code, doc, _ = run(capsys, "check", "graded-frame", "--model", str(fx / "section6-F2.json"))
    assert code == 1 and doc["grade"] == 2
    code, doc, _ = run(capsys, "check", "morphism", "--left", str(fx / "section6-F.json"),
                       "--right", str(fx / "section6-F2.json"), "--map", str(fx / "section6-map.json"))
    assert code == 0 and doc["surjective"] is True
    assert run(capsys, "check", "monotonic", "--model", str(fx / "section6-F2.json"))[0] == 0
    assert run(capsys, "check", "ax5", "--model", str(fx / "section6-F.json"))[0] == 0
    assert run(capsys, "check", "ax6", "--model", str(fx / "section6-F.json"))[0] == 0
    assert run(capsys, "check", "stars", "--model", str(fx / "figure1-kripke.json"))[0] == 2


def test_check_bisim_identity(fx, capsys, tmp_path):
    model = fx / "figure1-kripke.json"
    rel = tmp_path / "z.json"
    rel.write_text(dumps({"pairs": [[w, w] for w in ["w", "u1", "u2", "u3", "u4"]]}))
    code, doc, _ = run(capsys, "check", "bisim", "--left", str(model), "--right", str(model),
                       "--relation", str(rel))
    assert code == 0 and doc["status"] == "pass"
    code, doc, _ = run(capsys, "largest", "--left", str(model), "--right", str(model))
    assert code == 0 and ["w", "w"] in doc["pairs"]
    fam = tmp_path / "t.json"
    fam.write_text(dumps({"family": [{"grade": 1, "pairs": [[["w"], ["w"]]]},
                                     {"grade": 2, "pairs": [[["u1"], ["u2"]]]}]}))
    code, doc, _ = run(capsys, "check", "tuple-bisim", "--left", str(model), "--right", str(model),
                       "--relation", str(fam))
    assert code == 1 and doc["item"] == 3
    rel.write_text(dumps({"pairs": []}))
    assert run(capsys, "check", "bisim", "--left", str(model), "--right", str(model),
               "--relation", str(rel))[0] == 2


def test_valid_and_axioms(fx, capsys):
    code, doc, _ = run(capsys, "valid", "--model", str(fx / "figure1-kripke.json"),
                       "--formula", "(dia 1 top)")
    assert code == 1 and doc["status"] == "countermodel"
    code, doc, _ = run(capsys, "valid", "--model", str(fx / "section6-F.json"),
                       "--formula", "(imp (dia 2 p) (dia 1 p))")
    assert code == 0
    code, doc, _ = run(capsys, "axioms", "--semantics", "graded", "--trials", "10")
    assert code == 0 and doc["failures"] == []


def test_search(capsys):
    code, doc, _ = run(capsys, "search", "--formula", "top", "--max-worlds", "2", "--candidates", "500")
    assert code == 0 and doc["status"] == "not_found"
    code, doc, _ = run(capsys, "search", "--formula", "(dia 1 top)", "--max-worlds", "2")
    assert code == 1 and doc["model"]["type"] == "nbhd"


def test_equiv(fx, capsys):
    model = str(fx / "figure1-kripke.json")
    code, doc, _ = run(capsys, "equiv", "--left", model, "--right", model, "--world", "u2",
                       "--world2", "u3", "--trials", "100")
    assert code == 0 and doc["status"] == "agree"
    code, doc, _ = run(capsys, "equiv", "--left", model, "--right", model, "--world", "u1",
                       "--world2", "u2", "--trials", "100")
    assert code == 1 and doc["status"] == "distinguished"


def test_fixture_is_deterministic(capsys):
    outs = [run(capsys, "fixture", "section6")[2] for _ in range(2)]
    assert outs[0] == outs[1]
    code, doc, _ = run(capsys, "fixture", "figure1-kripke")
    assert doc["worlds"] == ["u1", "u2", "u3", "u4", "w"]
    assert doc["val"] == {"p": ["u2", "u3", "u4"]}


def test_fuzz(capsys, tmp_path):
    code, doc, _ = run(capsys, "fuzz", "--suite", "truth-preservation", "--iters", "50")
    assert code == 0 and doc["failures"] == 0
    first = run(capsys, "fuzz", "--suite", "star-equiv", "--iters", "40", "--seed", "3")[2]
    again = run(capsys, "fuzz", "--suite", "star-equiv", "--iters", "40", "--seed", "3", "--jobs", "2")[2]
    assert first == again
    assert run(capsys, "fuzz", "--suite", "nope")[0] == 2


def test_budget_flag(fx, capsys):
    code, doc, _ = run(capsys, "--budget", "4", "valid", "--model", str(fx / "figure1-kripke.json"),
                       "--formula", "(or p q)")
    assert code == 2 and "budget" in doc["message"]


def test_console_script_subprocess(fx):
    proc = subprocess.run([sys.executable, "-m", "gmlkit.cli", "eval", "--model",
                           str(fx / "figure1-graded.json"), "--world", "w", "--formula", "(dia 3 p)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["truth"] is True
    assert proc.stderr == ""
