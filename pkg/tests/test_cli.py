import csv
import io
import json
import os
import subprocess
import sys

import jsonschema
import pytest

from biuniv import bounds as B
from biuniv import cli
from biuniv.errors import BoundUndefined
from biuniv.report import (BOUND_RECORD_SCHEMA, EXTREMAL_SCHEMA, MANIFEST_SCHEMA, digest,
                           document_schema, verify_document)
from biuniv.series import compose, identity, normalized, reverse

FAST = ["--samples", "2000", "--refine", "5"]


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def without_timestamp(doc):
    doc = json.loads(json.dumps(doc))
    doc["manifest"].pop("timestamp")
    return doc


# --- cheby ------------------------------------------------------------------------

@pytest.mark.parametrize("kind,n,t,expected", [
    ("U", 2, 0.75, "1.25"), ("T", 0, 0.3, "1"), ("U", 4, 0.75, "-0.6875"),
])
def test_cheby(capsys, kind, n, t, expected):
    code, out, _ = run(capsys, "cheby", "--kind", kind, "--n", str(n), "--t", str(t))
    assert code == 0 and out.strip() == expected


def test_cheby_domain_error(capsys):
    code, _, err = run(capsys, "cheby", "--kind", "U", "--n", "2", "--t", "1.5")
    assert code == 2 and "domain" in err


# --- bounds -----------------------------------------------------------------------

def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--delta", "1", "--m", "0", "--t", "0.75")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 1
    jsonschema.validate(rows[0], BOUND_RECORD_SCHEMA)
    assert rows[0]["printed_a2"] == pytest.approx(0.470437, abs=1e-6)
    assert rows[0]["derived_a2"] == 0.75


def test_bounds_r1(capsys):
    code, out, _ = run(capsys, "bounds", "--delta", "1", "--m", "0", "--t", "0.75", "--r", "1")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 2
    for row in rows:
        jsonschema.validate(row, BOUND_RECORD_SCHEMA)
    assert rows[1]["fs_printed"] == pytest.approx(0.5) and rows[1]["fs_derived"] == pytest.approx(0.5)


def test_bounds_formula_filter_and_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--delta", "2", "--m", "1", "--t", "0.6",
                       "--r", "0,2", "--formula", "derived", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert all(r["printed_a2"] == "" and r["fs_case_printed"] == "" for r in rows)
    assert float(rows[0]["derived_a2"]) == pytest.approx(0.2)
    assert rows[1]["r"] == "0.0"


def test_bounds_domain_error(capsys):
    assert run(capsys, "bounds", "--delta", "0.5", "--m", "0", "--t", "0.75")[0] == 2


def test_bounds_undefined_exit(capsys, monkeypatch):
    def boom(params):
        raise BoundUndefined("radicand <= 0")
    monkeypatch.setattr(B, "printed_a2_bound", boom)
    code, _, err = run(capsys, "bounds", "--delta", "1", "--m", "0", "--t", "0.75")
    assert code == 2 and "bound undefined" in err
    # derived-only output does not need the printed formula
    assert run(capsys, "bounds", "--delta", "1", "--m", "0", "--t", "0.75",
               "--formula", "derived")[0] == 0


# --- invert -----------------------------------------------------------------------

def test_invert_examples(capsys):
    code, out, _ = run(capsys, "invert", "--coeffs", "0.1,0.05,0.01", "--order", "4")
    vals = [float(x) for x in out.split(",")]
    assert code == 0
    assert vals == pytest.approx([-0.1, -0.03, 0.01], abs=1e-14)
    code, out, _ = run(capsys, "invert", "--coeffs", "0", "--order", "3")
    assert out.strip() == "0, 0"


def test_invert_round_trip(capsys):
    coeffs = "0.07,-0.03,0.05,0.02,-0.01"
    _, out, _ = run(capsys, "invert", "--coeffs", coeffs, "--order", "6")
    _, again, _ = run(capsys, "invert", "--coeffs=" + out.strip().replace(" ", ""),
                       "--order", "6")
    got = [float(x) for x in again.split(",")]
    assert got == pytest.approx([float(x) for x in coeffs.split(",")], abs=1e-10)
    f = normalized([float(x) for x in coeffs.split(",")], order=6)
    assert compose(f, reverse(f)).allclose(identity(6), tol=1e-12)


def test_invert_parse_error(capsys):
    assert run(capsys, "invert", "--coeffs", "0.1,abc")[0] == 1
    assert run(capsys, "invert", "--coeffs", "0.1", "--order", "1")[0] == 1


# --- argument handling ------------------------------------------------------------

def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "cheby", "--kind", "V", "--n", "1", "--t", "0.5")[0] == 1
    assert run(capsys, "sweep", "--t", "0.9:0.5:0.1", "--out", "-")[0] == 1
    assert run(capsys, "sweep", "--m", "1.5", "--out", "-")[0] == 1


def test_parse_values():
    assert cli.parse_values("0.55:0.95:0.2") == [0.55, 0.75, 0.95]
    assert cli.parse_values("0.55:0.95:0.1") == [0.55, 0.65, 0.75, 0.85, 0.95]
    assert cli.parse_values("1,1.5,2:3:1") == [1, 1.5, 2, 3]
    assert cli.parse_values("0:2:1", int) == [0, 1, 2]
    for bad in ("", "1,,2", "1:2", "1:2:0", "x"):
        with pytest.raises(cli.UsageError):
            cli.parse_values(bad)


# --- verify -----------------------------------------------------------------------

def verify_doc_schema():
    return document_schema({
        "type": "object",
        "required": ["reports", "violations_derived"],
        "properties": {"reports": {"type": "array", "items": EXTREMAL_SCHEMA},
                       "violations_derived": {"type": "integer", "minimum": 0}},
    })


def test_verify_default_point(tmp_path):
    out = tmp_path / "v.json"
    assert cli.main(["verify", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, verify_doc_schema())
    assert verify_document(doc)
    reps = doc["payload"]["reports"]
    assert len(reps) == 2 * (2 + 5)
    assert all(r["margin_derived"] >= -1e-9 for r in reps)
    assert doc["manifest"]["seed"] == 42
    assert doc["manifest"]["command"].startswith("biuniv verify")


def test_verify_single_sample(capsys):
    code, out, _ = run(capsys, "verify", "--samples", "1", "--seed", "0", "--mode", "paper")
    doc = json.loads(out)
    assert code == 0
    jsonschema.validate(doc, verify_doc_schema())
    assert {r["samples"] for r in doc["payload"]["reports"]} == {1}


def test_verify_repeatable(capsys):
    a = json.loads(run(capsys, "verify", *FAST)[1])
    b = json.loads(run(capsys, "verify", *FAST)[1])
    assert without_timestamp(a) == without_timestamp(b)


def test_verify_violation_exit(capsys, monkeypatch):
    real = B.derived_a2_bound
    monkeypatch.setattr(B, "derived_a2_bound", lambda p: 0.5 * real(p))
    code, out, _ = run(capsys, "verify", *FAST, "--mode", "paper")
    assert code == 3
    assert json.loads(out)["payload"]["violations_derived"] >= 1


def test_verify_domain_error(capsys):
    assert run(capsys, "verify", "--t", "0.4", *FAST)[0] == 2


# --- sweep and audit --------------------------------------------------------------

def test_sweep_default_grid_cardinality(tmp_path):
    out = tmp_path / "s.csv"
    code = cli.main(["sweep", "--samples", "200", "--refine", "0", "--mode", "paper",
                     "--r", "0", "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    for f in ("a2", "a3", "fs"):
        assert sum(r["functional"] == f for r in rows) == 60
    assert list(rows[0]) == list(cli.SWEEP_FIELDS)
    side = json.loads((tmp_path / "s.csv.manifest.json").read_text())
    jsonschema.validate(side["manifest"], MANIFEST_SCHEMA)
    assert side["manifest"]["digest"] == digest(out.read_bytes())
    assert side["manifest"]["grid"]["points"] == 60


def test_sweep_range_expansion(capsys):
    code, out, _ = run(capsys, "sweep", "--delta", "1", "--m", "0", "--t", "0.55:0.95:0.2",
                       "--r", "1", "--mode", "schur", *FAST)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sorted({float(r["t"]) for r in rows}) == [0.55, 0.75, 0.95]
    assert len(rows) == 9


def test_sweep_out_of_domain(capsys):
    assert run(capsys, "sweep", "--delta", "0.9", "--out", "-", *FAST)[0] == 2


def audit_doc_schema():
    return document_schema({
        "type": "object",
        "required": ["records", "flags", "extremal"],
        "properties": {"extremal": {"type": "array", "items": EXTREMAL_SCHEMA},
                       "records": {"type": "array"}, "flags": {"type": "array"}},
    })


def test_audit_flags_printed_a2_against_search(tmp_path):
    out, table = tmp_path / "a.json", tmp_path / "a.csv"
    code = cli.main(["audit", "--delta", "1", "--m", "0", "--t", "0.75", "--r", "0,1",
                     "--samples", "20000", "--refine", "50", "--out", str(out),
                     "--csv", str(table)])
    assert code == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, audit_doc_schema())
    assert verify_document(doc)
    a2 = doc["payload"]["records"][0]["comparisons"][0]
    assert a2["printed"] == pytest.approx(0.470437, abs=1e-6)
    assert a2["derived"] == 0.75
    assert a2["empirical_paper"] == pytest.approx(0.75, abs=1e-3)
    assert a2["printed_below_empirical_paper"] is True
    flagged = [f for f in doc["payload"]["flags"] if f["functional"] == "a2"]
    assert "printed_below_empirical_paper" in flagged[0]["flags"]
    assert table.read_text().startswith("delta,t,m,functional")


def test_audit_without_search(capsys):
    code, out, _ = run(capsys, "audit", "--no-search", "--r", "0")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["payload"]["records"]) == 60 and doc["payload"]["extremal"] == []
    assert doc["manifest"]["grid"]["search"] is False


# --- subprocess / environment -----------------------------------------------------

def _subprocess(args, threads):
    env = dict(os.environ, BIUNIV_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "biuniv.cli", *args], env=env,
                          capture_output=True, text=True, check=False)


def test_entry_point_and_thread_independence():
    args = ["verify", "--samples", "40000", "--refine", "10", "--r", "0,2"]
    a, b = _subprocess(args, 1), _subprocess(args, 4)
    assert a.returncode == 0 and b.returncode == 0, a.stderr + b.stderr
    da, db = json.loads(a.stdout), json.loads(b.stdout)
    assert da["payload"] == db["payload"]
    assert without_timestamp(da) == without_timestamp(db)
