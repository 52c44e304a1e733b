"""The nine acceptance criteria, one test each, printing a PASS/FAIL line."""
import pytest

from hyperkm import verify

CHECKS = {c.__name__: c for c in verify.ALL_CHECKS}


@pytest.mark.parametrize("name", list(CHECKS))
def test_criterion(name, capsys):
    result = CHECKS[name]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail
