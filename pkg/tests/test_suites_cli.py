import json
import subprocess
import sys

import pytest

from ovlab import cli, suites


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "ovlab.cli", *argv],
                          capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def strip_time(doc):
    doc = json.loads(json.dumps(doc))
    doc["summary"].pop("wall_time", None)
    return doc


def test_parse_range():
    assert suites.parse_range("3..5") == (3, 5)
    with pytest.raises(suites.BadRange):
        suites.parse_range("5..3")
    with pytest.raises(suites.BadRange):
        suites.parse_range("four")


def test_bad_range_and_unknown_suite():
    with pytest.raises(suites.BadRange):
        suites.run_suite("core-identities", (2, 2), 1, 0)
    with pytest.raises(suites.UnknownSuite):
        suites.run_suite("section9", (3, 3), 1, 0)


def test_deterministic_reports():
    a = suites.run_suite("section7", (4, 5), 3, 9)
    b = suites.run_suite("section7", (4, 5), 3, 9)
    assert strip_time(a) == strip_time(b)
    c = suites.run_suite("section7", (4, 5), 3, 10)
    assert strip_time(a) != strip_time(c)


def test_parallel_matches_serial():
    a = suites.run_suite("prop34", (3, 4), 3, 5, workers=1)
    b = suites.run_suite("prop34", (3, 4), 3, 5, workers=2)
    assert strip_time(a)["checks"] == strip_time(b)["checks"]


def test_record_fields():
    doc = suites.run_suite("prop21", (3, 3), 2, 1)
    rec = doc["checks"][0]
    assert set(rec) >= {"check_id", "paper_anchor", "status", "reason", "residual", "params"}
    assert set(doc["summary"]) >= {"seed", "arithmetic_mode", "counts", "wall_time"}
    assert all(r["residual"] in (None, "0") for r in doc["checks"])


def test_float_mode_suite():
    doc = suites.run_suite("core-identities", (3, 4), 3, 2, arith="float", tol=1e-8)
    assert doc["summary"]["arithmetic_mode"] == "float"
    assert doc["summary"]["counts"]["fail"] == 0


def test_cli_verify_bad_range():
    code, _, err = run_cli("verify", "--suite", "all", "--n", "2..2")
    assert code == 2 and "BadRange" in err


def test_cli_verify_unknown_suite():
    code, _, err = run_cli("verify", "--suite", "nope", "--n", "3..3")
    assert code == 2 and "UnknownSuite" in err


def test_cli_verify_writes_report(tmp_path):
    out = tmp_path / "r.json"
    assert cli.main(["verify", "--suite", "prop34", "--n", "3..4", "--trials", "2",
                     "--seed", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["counts"]["fail"] == 0 and doc["summary"]["seed"] == 3


def test_cli_exit_code_tracks_failures(tmp_path):
    # the literal relations fail on most two-curvature points
    out = tmp_path / "s6.json"
    code = cli.main(["verify", "--suite", "section6", "--n", "4..4", "--trials", "4",
                     "--out", str(out)])
    doc = json.loads(out.read_text())
    assert (code == 1) == (doc["summary"]["counts"]["fail"] > 0)


def test_gen_round_trip(tmp_path):
    inst = tmp_path / "i.json"
    assert cli.main(["gen", "--kind", "three-curvature", "--n", "5", "--seed", "1",
                     "--out", str(inst)]) == 0
    doc = json.loads(inst.read_text())
    assert doc["kind"] == "affine" and doc["n"] == 5
    rep = tmp_path / "c.json"
    assert cli.main(["classify", "--instance", str(inst), "--out", str(rep)]) == 0
    cls = json.loads(rep.read_text())
    assert cls["spectrum"] is not None


def test_gen_spaceform_round_trip(tmp_path):
    inst = tmp_path / "sf.json"
    cli.main(["gen", "--kind", "spaceform", "--n", "4", "--seed", "2", "--out", str(inst)])
    parsed = cli.load_instance(str(inst))
    assert parsed.n == 4 and parsed.spectrum is not None


def test_classify_quasi_umbilical(tmp_path):
    inst = tmp_path / "q.json"
    inst.write_text(json.dumps({"kind": "affine", "n": 4, "spectrum": [
        {"value": "3", "mult": 1}, {"value": "1", "mult": 3}]}))
    out = tmp_path / "o.json"
    assert cli.main(["classify", "--instance", str(inst), "--out", str(out)]) == 0
    assert "QuasiUmbilical(rho=1)" in json.loads(out.read_text())["flags"]


def test_decompose_two_curvature(tmp_path):
    inst = tmp_path / "d.json"
    inst.write_text(json.dumps({"kind": "affine", "n": 4, "h": [[1, 0, 0, 0], [0, 1, 0, 0],
                                [0, 0, 1, 0], [0, 0, 0, 1]],
                                "S": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]}))
    out = tmp_path / "o.json"
    assert cli.main(["decompose", "--instance", str(inst), "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["decompositions"]["roter"] == {"phi": "1/9", "mu": "-2/9", "eta": "4/9"}


@pytest.mark.parametrize("doc, msg", [
    ({"kind": "projective", "n": 3}, "kind"),
    ({"kind": "affine"}, "n"),
    ({"kind": "affine", "n": 3, "spectrum": [{"value": "1", "mult": 2}]}, "multiplicities"),
    ({"kind": "affine", "n": 2, "h": [[1, 0], [0, 1]], "S": [[1, 2], [3, 1]]}, "S"),
    ({"kind": "affine", "n": 2, "spectrum": [{"value": "x/y", "mult": 2}]}, "scalar"),
    ({"kind": "spaceform", "n": 2, "signature": [1, 2], "spectrum": []}, "signature"),
])
def test_parse_errors(doc, msg):
    with pytest.raises(cli.ParseError, match=msg):
        cli.parse_instance(doc)


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli("classify", "--instance", str(bad))
    assert code == 2 and "ParseError" in err


def test_metric_check_schwarzschild():
    code, out, _ = run_cli("metric-check", "schwarzschild", "--r", "3", "4")
    doc = json.loads(out)
    assert code == 0
    assert {c["check_id"] for c in doc["checks"]} >= {"metric.ricci_flat", "metric.pseudosymmetry"}
