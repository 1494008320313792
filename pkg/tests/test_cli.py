import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from bopcalc.cli import CHECK_NAMES
from bopcalc.series import TruncatedSeries

SERIES_SCHEMA = {
    "type": "object",
    "required": ["truncation", "coefficients"],
    "properties": {
        "truncation": {"type": "integer", "minimum": 0},
        "coefficients": {"type": "array",
                         "items": {"type": "string", "pattern": r"^-?\d+$"}},
    },
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["check", "parameters", "pass", "elapsed_ms"],
    "properties": {
        "check": {"type": "string"},
        "parameters": {"type": "object"},
        "pass": {"type": "boolean"},
        "elapsed_ms": {"type": "number", "minimum": 0},
        "first_failure_degree": {"type": "integer", "minimum": 0},
        "detail": {"type": "object"},
    },
    "additionalProperties": False,
}

HOMOLOGY_SCHEMA = {
    "type": "object",
    "required": ["command", "spectrum", "index", "max_degree",
                 "provenance", "table", "series", "notes"],
    "properties": {
        "command": {"const": "homology"},
        "spectrum": {"type": "string"},
        "index": {"type": "integer"},
        "max_degree": {"type": "integer", "minimum": 0},
        "provenance": {"enum": ["catalog", "rank_rule", "product",
                                "ses_solved", "bss_iteration"]},
        "table": {"type": ["object", "null"]},
        "series": SERIES_SCHEMA,
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}


def run_cli(*argv, **kwargs):
    return subprocess.run([sys.executable, "-m", "bopcalc", *argv],
                          capture_output=True, text=True, **kwargs)


def test_homology_table_text():
    proc = run_cli("homology", "BoP", "4", "-N", "16")
    assert proc.returncode == 0
    assert "space: BoP_4" in proc.stdout
    assert "provenance: ses_solved" in proc.stdout
    assert "kind: polynomial" in proc.stdout
    rows = {}
    for line in proc.stdout.splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[0].isdigit():
            rows[int(parts[0])] = int(parts[1])
    assert rows == {4: 1, 8: 1, 10: 1, 12: 2, 14: 1, 16: 3}


def test_homology_json_schema_and_roundtrip():
    proc = run_cli("homology", "X", "-2", "-N", "20", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    jsonschema.validate(doc, HOMOLOGY_SCHEMA)
    series = TruncatedSeries.from_json(doc["series"])
    assert series.truncation == 20
    assert doc["provenance"] == "rank_rule"


def test_homology_bo_auto_periodic_note():
    proc = run_cli("homology", "bo", "9", "-N", "12")
    assert proc.returncode == 0
    assert "note:" in proc.stderr
    quiet = run_cli("homology", "bo", "9", "-N", "12", "--quiet")
    assert quiet.returncode == 0
    assert quiet.stderr == ""
    assert quiet.stdout == proc.stdout


def test_homology_series_only_space():
    proc = run_cli("homology", "BoP", "1", "-N", "8", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["table"] is None
    assert doc["notes"]


def test_homology_domain_errors():
    for argv in (("homology", "F", "9"),
                 ("homology", "Fish", "2"),
                 ("homology", "BP", "2", "--periodic"),
                 ("homology", "bo", "2", "-N", "-4")):
        proc = run_cli(*argv)
        assert proc.returncode == 2
        assert "error" in proc.stderr.lower()


def test_catalog_listing_and_profile():
    proc = run_cli("catalog")
    assert proc.returncode == 0
    names = proc.stdout.split()
    assert "BoP" in names and "bo" in names
    proc = run_cli("catalog", "bo", "-N", "12", "--format", "json")
    doc = json.loads(proc.stdout)
    assert doc["command"] == "catalog" and doc["max_degree"] == 12
    profile = doc["profile"]
    jsonschema.validate(profile["free_ranks"], SERIES_SCHEMA)
    free = TruncatedSeries.from_json(profile["free_ranks"])
    assert free.coefficient(4) == 1 and free.coefficient(6) == 0
    torsion = {row["degree"]: row["count"] for row in profile["torsion_z2"]}
    assert torsion == {1: 1, 2: 1, 9: 1, 10: 1}


def test_catalog_csv_parses():
    proc = run_cli("catalog", "BPn:2", "-N", "12", "--format", "csv")
    assert proc.returncode == 0
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    assert rows[0]["spectrum"] == "BPn(2)"
    by_degree = {int(r["degree"]): int(r["free_rank"]) for r in rows}
    assert by_degree[0] == 1 and by_degree[2] == 1 and by_degree[6] == 2


def test_verify_single_json():
    proc = run_cli("verify", "rhs-one", "-N", "64", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["command"] == "verify"
    jsonschema.validate(doc["report"], REPORT_SCHEMA)
    assert doc["report"]["pass"] is True
    assert doc["report"]["parameters"]["max_degree"] == 64


def test_verify_fault_injection_fails_with_location():
    proc = run_cli("verify", "rhs-one", "-N", "64", "--inject-fault",
                   "--format", "json")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["report"]["pass"] is False
    assert doc["report"]["first_failure_degree"] == 8


def test_verify_fault_requires_support():
    proc = run_cli("verify", "squares", "--inject-fault")
    assert proc.returncode == 2
    proc = run_cli("verify", "all", "--inject-fault")
    assert proc.returncode == 2


def test_verify_all_capped():
    proc = run_cli("verify", "all", "-N", "64", "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["pass"] is True
    assert len(doc["reports"]) == len(CHECK_NAMES)
    for report in doc["reports"]:
        jsonschema.validate(report, REPORT_SCHEMA)


def test_verify_quiet_table_hides_passes():
    proc = run_cli("verify", "bo-deloopings", "--quiet")
    assert proc.returncode == 0
    assert proc.stdout == ""


def test_verify_unknown_check_rejected_by_parser():
    proc = run_cli("verify", "no-such-check")
    assert proc.returncode == 2
    assert "invalid choice" in proc.stderr


def test_conjecture_series_csv():
    proc = run_cli("conjecture", "5", "-N", "10", "--format", "csv")
    assert proc.returncode == 0
    rows = list(csv.DictReader(io.StringIO(proc.stdout)))
    coeffs = [int(r["coefficient"]) for r in rows]
    assert coeffs == [1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 1]


def test_conjecture_height_validation():
    assert run_cli("conjecture", "2").returncode == 2
    assert run_cli("conjecture").returncode == 2
    proc = run_cli("conjecture", "5", "--check", "limit")
    assert proc.returncode == 2


def test_conjecture_check_runs():
    proc = run_cli("conjecture", "--check", "first-appearance",
                   "--format", "json")
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["report"]["check"] == "first-appearance"


def test_output_file(tmp_path):
    target = tmp_path / "out.json"
    proc = run_cli("conjecture", "4", "-N", "8", "--format", "json",
                   "--output", str(target))
    assert proc.returncode == 0
    assert proc.stdout == ""
    doc = json.loads(target.read_text())
    assert doc["command"] == "conjecture" and doc["height"] == 4


def test_console_script_entry_point():
    proc = subprocess.run(["bopcalc", "catalog"], capture_output=True,
                          text=True)
    assert proc.returncode == 0 and "BoP" in proc.stdout
