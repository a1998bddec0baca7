import random

import pytest

from qalpha import verify
from qalpha.cli import main


def test_every_suite_has_checks():
    for suite in verify.SUITES:
        assert verify.checks_for(suite)
    assert verify.checks_for("all") == sorted(verify.CHECKS)
    with pytest.raises(ValueError):
        verify.checks_for("nope")


def test_random_polynomials_are_seeded():
    a = [verify.random_nc_polynomial(random.Random(5)) for _ in range(3)]
    b = [verify.random_nc_polynomial(random.Random(5)) for _ in range(3)]
    assert a == b
    assert all(p.degree() <= 6 for p in a)


def test_failures_and_crashes_are_reported(monkeypatch, capsys):
    def failing(max_m, seed):
        return False, "failed: forced"

    def crashing(max_m, seed):
        raise RuntimeError("boom")

    monkeypatch.setitem(verify.CHECKS, "spans.zz_failing", ("spans", failing))
    monkeypatch.setitem(verify.CHECKS, "spans.zz_crashing", ("spans", crashing))
    results = verify.run_suite("spans", 1)
    by_name = {r.name: r for r in results}
    assert not by_name["spans.zz_failing"].passed
    assert by_name["spans.zz_crashing"].detail == "RuntimeError: boom"
    assert by_name["spans.dimension"].passed
    assert main(["verify", "--suite", "spans", "--max-m", "1"]) == 1
    assert "FAIL  spans.zz_failing" in capsys.readouterr().out


def test_summary_shape():
    results = verify.run_suite("lemmas", 2, seed=3)
    data = verify.summary("lemmas", 2, 3, results)
    assert data["passed"] and data["seed"] == 3 and data["max_m"] == 2
    assert {"name", "passed", "detail", "seconds"} <= set(data["checks"][0])
