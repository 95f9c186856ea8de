"""Acceptance criteria 1-12; one PASS/FAIL line each in the terminal summary."""

import pytest

from beattysums.harness.checks import ALL_CHECKS
from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("check", ALL_CHECKS, ids=[c.__name__ for c in ALL_CHECKS])
def test_criterion(check):
    result = check()
    print(result.line)
    ACCEPTANCE_LINES.append(result.line)
    assert result.passed, result.line
