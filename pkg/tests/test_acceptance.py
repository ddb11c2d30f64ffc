"""Exit criteria at desk scale. One line per criterion is printed in the
terminal summary; failures here are real and are not masked."""

import json

import pytest

from smoothbound.acceptance import CRITERIA

RESULTS = []


@pytest.mark.acceptance
@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i:02d}_{fn.__name__}" for i, fn in enumerate(CRITERIA, 1)])
def test_criterion(check):
    r = check("desk")
    RESULTS.append(r)
    print(r.line())
    assert r.passed, json.dumps(r.detail, default=str)
