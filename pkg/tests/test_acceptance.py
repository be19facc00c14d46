"""Acceptance criteria 1-12: one PASS/FAIL line per criterion, printed to the terminal."""

import pytest

from cuboid_cech.acceptance import CHECKS, run_check

LIMITS = {1: 1, 2: 1, 3: 60, 4: 60, 6: 120, 7: 1, 9: 30, 10: 30}


@pytest.mark.parametrize("number", sorted(CHECKS))
def test_criterion(number, capsys):
    res = run_check(number, seed=0)
    with capsys.disabled():
        print("\n" + res.line())
        for f in res.failures[:5]:
            print(f"       failure: {f}")
    assert res.passed, res.failures[:5]
    if number in LIMITS:
        assert res.seconds < LIMITS[number], f"took {res.seconds:.1f}s"
