"""The eleven acceptance criteria, each run cold against its time budget."""

import pytest

from milnorhomfly.acceptance import CRITERIA, run


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion-{c.number:02d}")
def test_criterion(criterion, capsys):
    outcome = run(criterion)
    with capsys.disabled():
        print(f"\n{outcome.line()}")
    assert outcome.passed, outcome.line()
    assert outcome.seconds <= criterion.budget
