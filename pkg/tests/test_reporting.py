import json
from fractions import Fraction

import pytest

from cue_lab.reporting import CSV_COLUMNS, Report, emit_report, format_number, parse_number, read_csv


def test_integer_report():
    d = json.loads(emit_report(Report("ks", {"N": 2, "k": 2}, 20, 0, "exact", "Eq:KSmomentsCharpol")))
    assert d["value"] == {"re": "20", "im": "0"}
    assert d["abs_error"] == "0"
    assert d["paper_anchor"] == "Eq:KSmomentsCharpol"
    assert "seed" not in d


def test_random_report_carries_seed_and_stderr():
    d = json.loads(emit_report(Report("x", {}, 1.5 + 0.5j, 0.1, "mc", "EqPhi:KS", seed=4, stderr=0.1)))
    assert d["seed"] == 4 and d["stderr"] == "0.1"
    assert d["value"] == {"re": "1.5", "im": "0.5"}


def test_rationals_as_strings():
    assert format_number(Fraction(1, 12)) == "1/12"
    for v in (20, Fraction(-3, 7), 0.125):
        assert parse_number(format_number(v)) == v


def test_csv_round_trip():
    reports = [
        Report("KS", {"k": 2}, Fraction(1, 12), 0, "hankel", "EqPhi:KS", runtime_ms=1.25),
        Report("z", {"N": 6}, 7.01, 0.03, "mcmc", "Eq:WeylHaarRealisationBis", seed=3, stderr=0.03),
    ]
    text = emit_report(reports, "csv")
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert read_csv(text) == [r.to_dict() for r in reports]


def test_write_error_names_path(tmp_path):
    bad = tmp_path / "missing" / "out.json"
    with pytest.raises(OSError, match="missing"):
        emit_report(Report("ks", {}, 1, 0, "exact", "a"), "json", str(bad))
