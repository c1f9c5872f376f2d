import json
import subprocess
import sys

import pytest

from sdpkit.catalog import named_group, named_system
from sdpkit.cli import main
from sdpkit.groups import cyclic_group, perm_from_cycles, validate_group
from sdpkit.symbolic.notation import condition_from_json
from sdpkit.symbolic.engine import condition
from sdpkit.symbolic import reference

from conftest import broken_332


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(write_json):
    G = named_group("S3")
    return {
        "s3": write_json("s3.json", G.to_dict()),
        "z2": write_json("z2.json", cyclic_group(2).to_dict()),
        "s3sys": write_json("s3sys.json", named_system("S3").to_dict()),
        "klein": write_json("klein.json", {"groups": [cyclic_group(2).to_dict()] * 2,
                                           "phi": {"2,1": [[0, 1], [0, 1]]}}),
        "broken": write_json("broken.json", broken_332().to_dict()),
        "unnormalized": write_json("un.json", {"groups": [cyclic_group(2).to_dict()] * 2,
                                               "phi": {"2,1": [[1, 0], [0, 1]]}}),
        "maps": write_json("maps.json", {"maps": [[0, 0, 0], [0, 1]]}),
    }


def test_validate_group(capsys, files, write_json):
    code, out, _ = run(capsys, "validate-group", files["s3"])
    assert code == 0 and json.loads(out)["order"] == 6
    bad = write_json("bad.json", {"table": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]})
    code, out, err = run(capsys, "validate-group", bad)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "NotAssociative"


def test_usage_errors_are_json(capsys, files):
    for argv in (["frobnicate"], ["check-system", files["s3sys"], "--bogus"], ["gen-axioms", "--max-k", "x"]):
        code, _, err = run(capsys, *argv)
        assert code == 2 and json.loads(err)["error"] == "UsageError"


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "check-system", tmp_path / "nope.json")
    assert code == 2 and json.loads(err)["error"] == "FileNotFoundError"


def test_check_system(capsys, files):
    code, out, _ = run(capsys, "check-system", files["s3sys"])
    assert code == 0 and json.loads(out)["normalized"]
    code, out, _ = run(capsys, "check-system", files["unnormalized"])
    assert code == 1 and json.loads(out)["violations"]


def test_unnormalized_system_rejected(capsys, files):
    code, _, err = run(capsys, "mul", files["unnormalized"], "[0,0]", "[0,0]")
    assert code == 2 and json.loads(err)["error"] == "NotNormalized"


def _built(capsys, tmp_path, system):
    out = tmp_path / "table.json"
    code, _, _ = run(capsys, "build-sdp", system, "--out", out)
    assert code == 0
    return json.loads(out.read_text())


def test_build_sdp_klein(capsys, files, tmp_path):
    doc = _built(capsys, tmp_path, files["klein"])
    G = validate_group(doc["table"])
    assert doc["associative"] and G.order == 4 and G.is_abelian()
    assert all(G.mul[x][x] == G.identity for x in G.elements())


def test_build_sdp_s3(capsys, files, tmp_path):
    doc = _built(capsys, tmp_path, files["s3sys"])
    G = validate_group(doc["table"])
    assert doc["associative"] and G.order == 6 and not G.is_abelian()


def test_build_sdp_non_associative(capsys, files, tmp_path):
    doc = _built(capsys, tmp_path, files["broken"])
    assert doc["associative"] is False and len(doc["table"]) == 8


def test_mul_and_table(capsys, files):
    code, out, _ = run(capsys, "mul", files["s3sys"], "[1,1]", "[0,1]")
    assert code == 0 and json.loads(out)["product"] == [1, 0]
    code, _, err = run(capsys, "mul", files["s3sys"], "[1]", "[0,1]")
    assert code == 2
    code, out, _ = run(capsys, "table", files["s3sys"], "--level", "1")
    doc = json.loads(out)
    assert doc["table"] == [list(r) for r in named_system("S3").group(1).mul]


def test_check_assoc(capsys, files):
    code, out, _ = run(capsys, "check-assoc", files["s3sys"], "--brute")
    doc = json.loads(out)
    assert code == 0 and doc["all_elementary_hold"] and doc["brute_force"]["holds"]
    code, out, _ = run(capsys, "check-assoc", files["broken"], "--brute")
    doc = json.loads(out)
    assert code == 1 and not doc["brute_force"]["holds"] and "disagreement" not in doc


def test_gen_axioms_counts(capsys):
    _, out, _ = run(capsys, "gen-axioms", "--max-k", "3")
    assert len(out.splitlines()) == 5
    _, out, _ = run(capsys, "gen-axioms", "--max-k", "5")
    assert len(out.splitlines()) == 14
    code, _, err = run(capsys, "gen-axioms", "--max-k", "1")
    assert code == 2


def test_gen_axioms_structured_reparses(capsys):
    _, out, _ = run(capsys, "gen-axioms", "--max-k", "4", "--format", "structured")
    doc = json.loads(out)
    for rec in doc["conditions"]:
        c = condition_from_json(rec)
        assert c == condition(*c.indices)
        assert rec["class"] == c.label()


def test_gen_axioms_all(capsys):
    _, out, _ = run(capsys, "gen-axioms", "--max-k", "4", "--all", "--format", "structured")
    recs = json.loads(out)["conditions"]
    classes = {r["class"] for r in recs} - {"vacuous"}
    assert len(classes) == 9
    assert len(recs) == sum(i for k in range(2, 5) for j in range(1, k + 1) for i in range(1, j + 1))


def test_verify_reference(capsys):
    code, out, _ = run(capsys, "gen-axioms", "--max-k", "5", "--verify-paper", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["verification"]["ok"]
    code, _, err = run(capsys, "gen-axioms", "--literal", "--verify-paper")
    assert code == 2


def test_verify_reference_mismatch(capsys, monkeypatch):
    monkeypatch.setitem(reference.REFERENCE_FORMS, (3, 2, 1, 1), "[a,b]^1·^{a·b}c = ^{a·b}c·[a,b]^1")
    code, _, err = run(capsys, "gen-axioms", "--max-k", "3", "--verify-paper")
    doc = json.loads(err)
    assert code == 2 and doc["error"] == "PaperMismatch"
    assert doc["rows"][0]["condition"] == "A[3,2,1;1]" and doc["rows"][0]["diff"]


def test_decompose(capsys, files, tmp_path):
    G = named_group("S3")
    r3 = G.index_of(perm_from_cycles(3, (1, 2, 3)))
    t = G.index_of(perm_from_cycles(3, (1, 2)))
    out = tmp_path / "sys.json"
    code, stdout, _ = run(capsys, "decompose", "--group", files["s3"], "--factors", f"{r3};{t}", "--out", out)
    doc = json.loads(stdout)
    assert code == 0 and doc["report"]["is_sdp"] and doc["roundtrip"]
    code, stdout, _ = run(capsys, "check-assoc", out)
    assert code == 0
    code, stdout, _ = run(capsys, "decompose", "--group", files["s3"], "--factors", f"{t};{r3}")
    assert code == 1 and json.loads(stdout)["report"]["failed"] == "normality(1)"
    code, _, _ = run(capsys, "decompose", "--group", files["s3"], "--factors", "1;x")
    assert code == 2


def test_check_hom(capsys, files, write_json):
    code, out, _ = run(capsys, "check-hom", "--system", files["s3sys"], "--target", files["z2"],
                       "--maps", files["maps"])
    doc = json.loads(out)
    assert code == 0 and doc["pairs"]["holds"] and doc["brute_force"]["holds"] and doc["commutator"]["holds"]
    bad = write_json("bad.json", {"maps": [[0, 1, 1], [0, 1]]})
    code, out, _ = run(capsys, "check-hom", "--system", files["s3sys"], "--target", files["z2"], "--maps", bad)
    assert code == 1 and "skipped" in json.loads(out)["commutator"]
    short = write_json("short.json", {"maps": [[0, 0, 0]]})
    code, _, err = run(capsys, "check-hom", "--system", files["s3sys"], "--target", files["z2"], "--maps", short)
    assert code == 2 and json.loads(err)["error"] == "ArityMismatch"


def test_experiment(capsys):
    code, out, _ = run(capsys, "experiment", "--count", "0")
    assert code == 0 and sum(json.loads(out)["agreement"].values()) == 0
    _, a, _ = run(capsys, "experiment", "--seed", "3", "--count", "20", "--shape", "2,2,2")
    _, b, _ = run(capsys, "experiment", "--seed", "3", "--count", "20", "--shape", "2,2,2")
    assert a == b
    for kind in ("hom", "vacuous", "soundness", "identities"):
        code, out, _ = run(capsys, "experiment", "--kind", kind, "--count", "5")
        assert code == 0 and json.loads(out)["ok"]
    code, _, err = run(capsys, "experiment", "--count", "-1")
    assert code == 2


def test_timing_goes_to_stderr(capsys):
    _, out, err = run(capsys, "--timing", "gen-axioms", "--max-k", "2")
    assert "elapsed_s" in json.loads(err.strip().splitlines()[-1])
    assert "elapsed" not in out


def test_entry_point(files):
    res = subprocess.run([sys.executable, "-m", "sdpkit.cli", "check-system", str(files["s3sys"])],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["r"] == 2
