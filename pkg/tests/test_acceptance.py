"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from hfcalc.acceptance import CRITERIA, Context

from conftest import ACCEPTANCE_LINES


@pytest.fixture(scope="module")
def ctx():
    return Context()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[fn.__name__.removeprefix("criterion_") for fn in CRITERIA])
def test_criterion(ctx, criterion):
    result = criterion(ctx)
    line = result.line()
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert result.passed, line
