from __future__ import annotations

import json

import pytest

from pgcol import BudgetExceeded, PgcolError, TheoremViolation, verify_theorem
from pgcol import structure
from pgcol.cli import main
from pgcol.extremal import construct_chain_colouring
from pgcol.report import VerificationReport
from pgcol.verify import DESCRIPTIONS, TAGS


def test_every_tag_described():
    assert set(TAGS) == set(DESCRIPTIONS)


@pytest.mark.parametrize("tag,q,n", [
    ("main1", 2, 3), ("easyequiv", 2, 3), ("targetiffplane", 2, 4), ("targetiffline", 3, 3),
    ("fullbinary", 2, 4), ("mainplane", 3, 3), ("ljomega", 2, 5), ("targetomega", 2, 5),
    ("main1", 4, 3), ("ljomega", 3, 4), ("easyequiv", 5, 3),
])
def test_sampled_runs_clean(tag, q, n):
    rep = verify_theorem(tag, q, n, exhaustive=False, samples=60, seed=9)
    assert rep.ok, rep.first_counterexample
    assert rep.instances_total == 60
    again = verify_theorem(tag, q, n, exhaustive=False, samples=60, seed=9)
    assert again.content() == rep.content()


def test_exhaustive_small():
    rep = verify_theorem("mainplane", 2, 3, s=3)
    assert rep.ok and rep.instances_total == 3**7
    rep = verify_theorem("targetomega", 2, 3, s=3)
    assert rep.ok and 0 < rep.instances_checked < rep.instances_total


def test_preconditions():
    with pytest.raises(PgcolError):
        verify_theorem("targetiffline", 2, 3)
    with pytest.raises(PgcolError):
        verify_theorem("targetiffplane", 2, 2)
    with pytest.raises(PgcolError):
        verify_theorem("mainplane", 2, 4)
    with pytest.raises(PgcolError):
        verify_theorem("bogus", 2, 3)
    with pytest.raises(BudgetExceeded):
        verify_theorem("easyequiv", 2, 4, s=3)


def test_report_semantics():
    rep = VerificationReport("t", "fam")
    assert rep.ok and rep.first_counterexample is None
    rep.add_violation({"a": 1})
    rep.add_violation({"a": 2})
    assert not rep.ok and rep.violations == 2 and rep.first_counterexample == {"a": 1}
    doc = json.loads(rep.to_json())
    assert doc["violations"] == 2 and "wall_time" in doc["footer"]
    assert "VIOLATION" in rep.summary()


def test_missing_decomposer_is_loud(monkeypatch, capsys, tmp_path):
    monkeypatch.setattr(structure, "find_decomposer", lambda c: None)
    c = construct_chain_colouring(2, 3, [0, 1, 2])
    with pytest.raises(TheoremViolation):
        structure.decompose(c)
    path = tmp_path / "c.pgcol"
    path.write_text("pgcol 1\n2 3 3\n0 1 1 2 2 2 2\n", newline="")
    assert main(["decompose", str(path)]) == 4
    assert "THEOREM_VIOLATION" in capsys.readouterr().err
