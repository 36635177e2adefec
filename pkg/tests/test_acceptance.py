"""Every exit criterion, run at its stated tolerance.

Each check prints one PASS/FAIL line directly to the terminal.  A criterion
fails if any of its checks fails.
"""
import pytest

from tripsep.acceptance import CRITERIA


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    checks = CRITERIA[number]()
    with capsys.disabled():
        print()
        for c in checks:
            print(c.line())
        print(f"CRITERION {number}: {'PASS' if all(c.passed for c in checks) else 'FAIL'}")
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)
