from __future__ import annotations

import json
import os

import pytest

from siegelcy.cli import main
from siegelcy.suite import emit_report, run_suite


def test_unknown_selector_raises():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_empty_report_has_zero_summary():
    from siegelcy.suite import SuiteReport

    empty = SuiteReport(truncation=12, seed=0, tol=1e-8)
    assert empty.summary == {"pass": 0, "fail": 0, "report": 0}
    assert empty.exit_ok


def test_chars_selector_all_pass():
    report = run_suite("chars")
    assert report.exit_ok
    assert report.summary["fail"] == 0
    assert all(c.status == "pass" for c in report.checks)


def test_boundary_selector_records():
    report = run_suite("boundary", truncation=8)
    by_id = {c.id: c for c in report.checks}
    dist = by_id["boundary.distribution"]
    assert dist.status == "pass"
    assert dist.data["total"] == 15
    assert dist.data["distribution"]["(0, 0, 0)"] == 8
    per_sextuple = dist.data["orders_by_sextuple"]
    assert len(per_sextuple) == 15
    assert per_sextuple["0100.0110.1000.1001.1100.1111"] == [1, 1, 1]


def test_relations_selector_passes_and_controls_detect():
    report = run_suite("relations", truncation=12)
    by_id = {c.id: c for c in report.checks}
    assert by_id["relations.falsification_controls"].status == "pass"
    assert by_id["relations.falsification_controls"].data["undetected"] == []
    assert len(by_id["relations.falsification_controls"].data["mutations"]) == 8
    for c in report.checks:
        assert c.status == "pass", c.id


def test_series_selector_flags_table_mismatch():
    report = run_suite("series", truncation=12)
    by_id = {c.id: c for c in report.checks}
    table = by_id["series.substitution_table"]
    assert table.status == "fail"
    mismatches = table.data["mismatches"]
    assert set(mismatches) == {"translate_z0[F5]", "translate_z2[F5]"}
    for v in mismatches.values():
        assert v["measured"] == [-1, 5] and v["tabulated"] == [1, 5]
    others = [c for c in report.checks if c.id != "series.substitution_table"]
    assert all(c.status == "pass" for c in others)


def test_json_report_is_byte_identical_across_runs(tmp_path):
    a = emit_report(run_suite("chars", seed=3), "json")
    b = emit_report(run_suite("chars", seed=3), "json")
    assert a == b
    payload = json.loads(a)
    assert payload["params"] == {"N": 12, "seed": 3, "tol": 1e-8}
    assert set(payload["summary"]) == {"pass", "fail", "report"}
    for check in payload["checks"]:
        assert set(check) == {"id", "paper_ref", "status", "data"}


def test_emit_report_writes_files(tmp_path):
    report = run_suite("chars")
    out = tmp_path / "report.json"
    emit_report(report, "json", path=str(out))
    loaded = json.loads(out.read_text())
    assert loaded["summary"]["fail"] == 0
    txt = emit_report(report, "text")
    assert "chars.even_count" in txt
    assert "ten even characteristics" in txt
    with pytest.raises(ValueError):
        emit_report(report, "xml")


def test_cli_exit_codes_and_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["chars", "--json", str(out)])
    assert code == 0
    assert out.exists()
    captured = capsys.readouterr()
    assert "summary:" in captured.out

    code = main(["series"])
    assert code == 1  # the substitution table carries two documented misprints


def test_cli_rejects_bad_selector(capsys):
    with pytest.raises(SystemExit):
        main(["nonsense"])


def test_series_cache_flag(tmp_path):
    cache = tmp_path / "cache"
    report = run_suite("boundary", truncation=8, cache_dir=str(cache))
    assert report.exit_ok
    assert any(name.startswith("theta_") for name in os.listdir(cache))
    # second run reads the cache
    report2 = run_suite("boundary", truncation=8, cache_dir=str(cache))
    assert report2.exit_ok
