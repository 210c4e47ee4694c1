"""The acceptance gate: one line per criterion, all at exact tolerance."""
import pytest

from picard_omega.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [k for k, _, _ in CRITERIA], ids=[f"criterion_{k:02d}" for k, _, _ in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print(f"\n{result.line()} [{result.seconds:.1f}s]")
    assert result.passed, result.detail
