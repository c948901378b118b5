"""Acceptance criteria 1-10, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) for the checklist alone, or
through pytest, where the same lines appear in the terminal summary.
"""

import sys

import pytest

from apolar.reproduce import NOT_REPRODUCED, run_all

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="module")
def results():
    return {r.number: r for r in run_all()}


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(results, number):
    r = results[number]
    ACCEPTANCE_LINES.append(r.line())
    print(r.line())
    assert r.passed, r.detail


def test_criterion_10_documented():
    line = f"[N/A ] 10. not-reproducible: {NOT_REPRODUCED}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert "proofs" in NOT_REPRODUCED


def main() -> int:
    res = run_all()
    for r in res:
        print(r.line())
    print(f"[N/A ] 10. not-reproducible: {NOT_REPRODUCED}")
    return 0 if all(r.passed for r in res) else 1


if __name__ == "__main__":
    sys.exit(main())
