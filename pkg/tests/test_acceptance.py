"""One line per acceptance criterion, at the stated tolerances (all exact)."""
import pytest

from poissonk.verify import SUITES, run_suite


@pytest.mark.parametrize("suite", list(SUITES))
def test_criterion(suite, capsys):
    (result,) = run_suite(suite)
    with capsys.disabled():
        print(f"\n{result.line()}")
    assert result.passed, result.detail
