"""The twelve acceptance criteria, each checked exactly (tolerance zero)."""

import pytest

from qfusion.verify import CRITERIA, run


@pytest.mark.parametrize("number", [n for n, *_ in CRITERIA], ids=[key for *_, key in CRITERIA])
def test_criterion(number):
    verdict = run(number)
    print(verdict.line())
    for line in verdict.details:
        print("    " + str(line))
    assert verdict.passed, verdict.line()
