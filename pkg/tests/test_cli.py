import io
import json

import pytest

from cuboid_cech.cech import cochain_from_json, cochain_to_json
from cuboid_cech.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_status_json_example():
    code, out = call("status", "--kappa", "0,1,2", "--k", "2", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["verdict"] == "Nonzero" and data["rule"] == "b"
    assert data["citation"].startswith("[top-nonvanishing]")


def test_status_with_assumption_flag():
    _, out = call("status", "--kappa", "1,2,3", "--k", "1", "--assume", "2^aleph(1) >= aleph(3)", "--json")
    assert json.loads(out)["verdict"] == "Nonzero"
    _, out = call("status", "--kappa", "1,2,3", "--k", "1", "--json")
    assert json.loads(out)["verdict"] == "Unknown"


def test_global_flags_before_the_subcommand():
    code, out = call("--json", "status", "--kappa", "0,0,5", "--k", "2")
    assert code == 0 and json.loads(out)["verdict"] == "Zero"


@pytest.mark.parametrize(
    "argv",
    [
        ("status", "--kappa", "2,1", "--k", "1"),
        ("status", "--kappa", "0,1", "--k", "0"),
        ("status", "--kappa", "0,1", "--k", "1", "--assume", "nonsense"),
        ("bogus",),
        ("fubini", "exists", "--kappa", "0,1"),
        ("verify", "99"),
        ("trivialize", "--in", "/nonexistent.json"),
    ],
)
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_capacity_guard_exits_3():
    assert call("betti", "--sizes", "2,2,2,2,2")[0] == 3


def test_betti_and_fubini():
    code, out = call("betti", "--sizes", "2,2,2", "--json")
    assert code == 0 and json.loads(out)["betti"] == [8, 0, 0]
    _, out = call("fubini", "exists", "--kappa", "0,0,1,1", "--k", "1", "--json")
    assert json.loads(out)["exists"] is False
    _, out = call("fubini", "inspect", "--rule", "min", "--point", "(2,7,inf)", "--facet", "01", "--j", "2", "--json")
    data = json.loads(out)
    assert data["piece"] == 0 and data["condition3"]["counts"][-1] == 2


def test_fuzz_report():
    code, out = call("fuzz", "--seed", "0", "--trials", "30", "--sizes", "2,2,2", "--json")
    data = json.loads(out)
    assert code == 0 and data["failures"] == [] and data["checks"] == 90


def test_pipeline_roundtrip(tmp_path, capsys):
    f_path = tmp_path / "f.json"
    assert call("build-cocycle", "main1", "--kappa", "0,0,1", "--k", "1", "--out", str(f_path))[0] == 0
    text = f_path.read_text()
    f = cochain_from_json(text)
    assert cochain_to_json(f) == json.loads(text)
    code, out = call("trivialize", "--in", str(f_path), "--rule", "min", "--verify-bound", "3")
    assert code == 0
    g = cochain_from_json(out)
    assert g.k == 0
    report = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert report["passed"] is True
    code, out = call("modify", "--in", str(f_path), "--verify-bound", "2")
    assert code == 0 and cochain_from_json(out).k == 1
    code, out = call("restrict", "--in", str(f_path), "--face", "12", "--json")
    assert code == 0 and json.loads(out)["domain"] == [1, 2]


def test_main1_requires_its_hypothesis():
    assert call("build-cocycle", "main1", "--kappa", "0,1,1", "--k", "1")[0] == 2
    assert call("build-cocycle", "main1", "--kappa", "0,1,1", "--k", "1", "--force")[0] == 0


def test_main3_and_pj(tmp_path):
    p = tmp_path / "m3.json"
    assert call("build-cocycle", "main3", "--z", "1", "--k", "1", "--out", str(p))[0] == 0
    code, out = call("pj", "--in", str(p), "--face", "12", "--j", "1", "--z", "1", "--json")
    assert code == 0 and json.loads(out)["holds"] is False
    code, out = call("pj", "--expr", "(even 1)", "--arity", "2", "--domain", "01", "--j", "1", "--json")
    assert json.loads(out)["holds"] is True


def test_trivialize_rejects_a_non_cocycle(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"n": 2, "k": 1, "entries": {"01": "1", "02": "0", "12": "0"}}))
    code, out = call("trivialize", "--in", str(p), "--verify-bound", "2")
    assert code == 1
    assert json.loads(out)["reason"] == "input is not a cocycle"


def test_embed_through_modify(tmp_path):
    p = tmp_path / "ex.json"
    p.write_text(json.dumps({"n": 2, "k": 1, "entries": {"01": "1", "02": "1", "12": "0"}}))
    code, _ = call("modify", "--in", str(p), "--embed-from", "0,0,0", "--kappa", "0,0,1", "--verify-bound", "3")
    assert code == 0


def test_determinism():
    a = call("build-cocycle", "main3", "--z", "2", "--k", "1", "--json")
    b = call("build-cocycle", "main3", "--z", "2", "--k", "1", "--json")
    assert a == b
    assert call("fuzz", "--seed", "5", "--trials", "10", "--json") == call("fuzz", "--seed", "5", "--trials", "10", "--json")


def test_verify_exit_codes():
    code, out = call("verify", "1,7")
    assert code == 0 and out.count("[PASS]") == 2
    code, out = call("verify", "2", "--json")
    assert code == 1
    report = json.loads(out)
    assert report["passed"] is False and report["results"][0]["failures"]
