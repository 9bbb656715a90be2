import json

import pytest

from selfnorm.catalog import builtin_catalog, parse_catalog
from selfnorm.verify import (
    CHECKS,
    VerificationReport,
    frobenius_family,
    parse_grid,
    run_checks,
    select_checks,
)


@pytest.fixture(scope="module")
def full_report():
    return run_checks(builtin_catalog())


def test_full_run_has_no_failures(full_report):
    bad = [r for r in full_report.records if r.status != "pass"]
    assert bad == []
    assert full_report.passed == len(full_report.records) > 1000


def test_every_check_contributes(full_report):
    seen = {r.check_id for r in full_report.records}
    assert seen == set(CHECKS)


def test_records_in_canonical_check_order(full_report):
    order = list(CHECKS)
    idx = [order.index(r.check_id) for r in full_report.records]
    assert idx == sorted(idx)


def test_selector():
    assert select_checks(None) == list(CHECKS)
    assert select_checks("all") == list(CHECKS)
    assert select_checks("d4,witness") == ["witness", "d4"]
    with pytest.raises(KeyError):
        select_checks("witness,nonsense")


def test_csv_and_json_are_stable():
    cat = builtin_catalog()
    a = run_checks(cat, "witness,classification")
    b = run_checks(builtin_catalog(), "witness,classification")
    assert a.to_csv() == b.to_csv()
    assert a.to_json() == b.to_json()
    assert a.to_csv().splitlines()[0] == "check_id,instance,expected,computed,status"
    doc = json.loads(a.to_json())
    assert doc["summary"] == {"total": len(a.records), "passed": a.passed, "failed": 0}
    assert list(doc["records"][0]) == ["check_id", "instance", "expected", "computed", "status"]


def test_construction_failure_is_a_failed_record():
    cat = parse_catalog(
        "group ok recipe cyclic n=4\nexpect d=1\n\n"
        "group bad recipe frobenius_metacyclic p=7 n=1 q=5 m=1\nexpect d=1\n"
    )
    rep = run_checks(cat, "expectations")
    status = {r.instance.split(":")[0]: r.status for r in rep.records}
    assert status == {"ok": "pass", "bad": "fail"}
    assert rep.failed == 1


def test_wrong_expectation_fails():
    cat = parse_catalog("group C4 recipe cyclic n=4\nexpect d=2\n")
    rep = run_checks(cat, "expectations")
    assert [r.status for r in rep.records] == ["fail"]
    assert rep.records[0].computed == "1"


def test_empty_report_serializes():
    rep = VerificationReport(())
    assert rep.to_csv() == "check_id,instance,expected,computed,status\n"
    assert json.loads(rep.to_json())["summary"]["total"] == 0


def test_parse_grid():
    assert parse_grid("p=5..7,q=2|3") == {"p": [5, 6, 7], "q": [2, 3]}
    with pytest.raises(ValueError):
        parse_grid("p5")


def test_small_family_sweeps():
    rows = frobenius_family("frob1", parse_grid("p=5..7,q=2..3,n=1..2,m=1..2"))
    assert {(r.p, r.q, r.n, r.m) for r in rows} == {(5, 2, 1, 1), (5, 2, 1, 2), (5, 2, 2, 1), (5, 2, 2, 2), (7, 2, 1, 1), (7, 2, 2, 1), (7, 3, 1, 1), (7, 3, 2, 1)}
    assert all(r.status == "pass" for r in rows)
    rows = frobenius_family("frob2", parse_grid("p=5..7,q=2..3"))
    assert {(r.p, r.q, r.case) for r in rows} == {
        (5, 2, "homogeneous-scalar"),
        (5, 3, "irreducible"),
        (7, 2, "homogeneous-scalar"),
        (7, 3, "homogeneous-scalar"),
        (7, 3, "split-distinct"),
    }
    assert all(r.status == "pass" for r in rows)
    with pytest.raises(ValueError):
        frobenius_family("frob9", {})
