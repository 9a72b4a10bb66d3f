"""Runs every acceptance criterion and prints one PASS/FAIL line for each."""
import pytest

from dp1kit.acceptance import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion, capsys):
    result = criterion(DEFAULT_SEED)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
