"""Report documents: canonical JSON, markdown rendering, determinism, the
fast suite end to end."""

import json

from operadkit.operads import CheckReport
from operadkit.reports import (
    ReportDocument,
    check_bundled_string_data,
    check_e2_dims,
    check_tom_dieck_examples,
    default_suite,
)


def make_doc(fail=False):
    doc = ReportDocument("unit", seed=7)

    def good():
        rep = CheckReport("b-check", "claim b", {"n": 1})
        rep.count(True)
        return rep

    def second():
        rep = CheckReport("a-check", "claim a")
        rep.count(not fail, None if not fail else "witness text")
        return rep

    doc.run(good)
    doc.run(second)
    return doc


def test_json_is_canonical_and_sorted():
    doc = make_doc()
    blob = doc.to_json()
    parsed = json.loads(blob)
    assert parsed["suite"] == "unit"
    assert parsed["seed"] == 7
    assert parsed["verdict"] == "pass"
    ids = [c["check"] for c in parsed["checks"]]
    assert ids == sorted(ids) == ["a-check", "b-check"]
    # no wall times in the canonical rendering
    assert "wall" not in blob and "time" not in blob
    assert doc.to_json() == blob


def test_failures_render_with_witnesses():
    doc = make_doc(fail=True)
    assert not doc.passed
    parsed = json.loads(doc.to_json())
    assert parsed["verdict"] == "fail"
    bad = [c for c in parsed["checks"] if c["verdict"] == "fail"]
    assert bad and bad[0]["witnesses"] == ["witness text"]
    md = doc.to_markdown()
    assert "## failures" in md
    assert "witness text" in md


def test_markdown_contains_table_and_times():
    md = make_doc().to_markdown()
    assert "| check | cases | verdict | wall time | claim |" in md
    assert "| a-check | 1 | pass |" in md
    assert "verdict: **pass**" in md


def test_e2_dims_check():
    rep = check_e2_dims(5)
    assert rep.passed, rep.line()
    assert rep.total == 5
    rep = check_e2_dims(4, b=3)
    assert rep.passed, rep.line()


def test_tom_dieck_and_bundled_data_checks():
    rep = check_tom_dieck_examples()
    assert rep.passed, rep.line()
    rep = check_bundled_string_data()
    assert rep.passed, rep.line()
    assert rep.total == 6


def test_fast_suite_passes_and_is_deterministic():
    doc1 = default_suite(seed=0, fast=True)
    assert doc1.passed
    blob1 = doc1.to_json()
    doc2 = default_suite(seed=0, fast=True)
    assert doc2.to_json() == blob1
    ids = [c["check"] for c in json.loads(blob1)["checks"]]
    assert ids == sorted(ids)
    assert len(ids) == len(set(ids))
    # every module family is represented
    for prefix in ("e2-", "gravity-", "bv-", "cacti-", "group-", "string-"):
        assert any(i.startswith(prefix) for i in ids), prefix
