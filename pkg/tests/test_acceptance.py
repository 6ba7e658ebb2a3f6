"""The acceptance criteria, one test each, at their stated tolerances."""

import pytest

from qtop.acceptance import CRITERIA

# filled as the criteria run; printed by the terminal summary hook in conftest
RESULTS = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    RESULTS[number] = result
    assert result.passed, "\n".join([result.line()] + result.failures[:10])
