"""The fifteen acceptance criteria, each at its own tolerance and time limit.

Run with ``pytest -s tests/test_acceptance.py`` to see one pass/fail line per
criterion; the lines are also echoed in the terminal summary.
"""

from __future__ import annotations

import pytest

from incilab.acceptance import CRITERIA, run_criterion
from incilab.rng import DEFAULT_SEED

LINES: list[str] = []


def test_fifteen_criteria_registered():
    assert [c.number for c in CRITERIA] == list(range(1, 16))


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion-{c.number:02d}-{c.module}" for c in CRITERIA])
def test_criterion(crit):
    r = run_criterion(crit, DEFAULT_SEED)
    line = r.line()
    LINES.append(line)
    print(line)
    assert r.checks_ok, line
    assert r.seconds < r.limit_s, line
    assert r.passed, line


def test_suite_is_reproducible():
    # a second run with the same seed reproduces the recorded details
    for number in (3, 7, 10):
        crit = CRITERIA[number - 1]
        a = run_criterion(crit, DEFAULT_SEED)
        b = run_criterion(crit, DEFAULT_SEED)
        assert a.details == b.details
