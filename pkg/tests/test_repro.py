import json

import pytest

from heytingqv.config import Budgets
from heytingqv.repro import expected_checks, run_repro

CHEAP = ("fig1", "th_noleast")


def test_expectations_file_is_well_formed():
    checks = expected_checks()
    names = [c["name"] for c in checks]
    assert len(names) == len(set(names))
    assert all(c["anchor"] and c["expected"] for c in checks)
    assert {n.split(".")[0] for n in names} == {"fig1", "th_rnpr", "th_noleast", "jankov"}


def test_fig1_suite():
    rep = run_repro("fig1")
    assert len(rep.checks) == 7
    assert rep.ok and rep.counts()["green"] == 7


def test_th_noleast_suite():
    rep = run_repro("th_noleast")
    assert rep.ok
    by_name = {c.name: c for c in rep.checks}
    assert by_name["th_noleast.mints_premise"].computed == "valid"
    assert by_name["th_noleast.mints_conclusion"].computed == "refuted"


def test_rows_are_ordered_by_name():
    rep = run_repro("fig1")
    names = [c.name for c in rep.checks]
    assert names == sorted(names)


def test_report_is_deterministic():
    one = run_repro("th_noleast").to_json(times=False)
    two = run_repro("th_noleast").to_json(times=False)
    assert one == two
    assert "seconds" not in json.loads(one)["checks"][0]


def test_trivial_budgets_never_red_except_the_documented_conflict():
    """On the smallest budgets every row is green or exceeds-budget.

    The single exception is the pure homomorphism check behind the figure
    transcription conflict, which no budget affects.
    """
    rep = run_repro("all", Budgets.trivial())
    assert [c.name for c in rep.red] == ["th_rnpr.c12p_preimage"]
    assert rep.counts()["exceeds-budget"] > 0


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_repro("nope")


def test_budget_overrides():
    b = Budgets().override("free_cap=5, power-cap=2")
    assert b.free_cap == 5 and b.power_cap == 2
    with pytest.raises(ValueError):
        Budgets().override("free_cap")
    with pytest.raises(ValueError):
        Budgets(free_cap=0)
