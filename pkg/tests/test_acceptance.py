"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines as they
complete, or ``starsearch verify`` for the same checks outside pytest.
"""

import pytest

from starsearch import acceptance


def _run(criterion):
    result = criterion()
    status = "PASS" if result.passed else "FAIL"
    print(f"{status}  criterion {result.number:2d}  {result.name}: {result.detail}")
    assert result.passed, f"criterion {result.number} ({result.name}): {result.detail}"


def test_criterion_01_figure_roots():
    _run(acceptance.criterion_1)


def test_criterion_02_symmetric_payoff_identity():
    _run(acceptance.criterion_2)


def test_criterion_03_trust_exceeds_reliability():
    _run(acceptance.criterion_3)


def test_criterion_04_eventually_decreasing_in_n():
    _run(acceptance.criterion_4)


def test_criterion_05_increasing_in_k():
    _run(acceptance.criterion_5)


def test_criterion_06_oracle_triangle():
    _run(acceptance.criterion_6)


def test_criterion_07_equilibrium_verification():
    _run(acceptance.criterion_7)


def test_criterion_08_best_response_trichotomy():
    _run(acceptance.criterion_8)


def test_criterion_09_unique_residual_root():
    _run(acceptance.criterion_9)


def test_criterion_10_byte_determinism():
    _run(acceptance.criterion_10)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-v"]))
