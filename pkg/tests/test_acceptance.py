"""Acceptance gate: every criterion runs exactly, one pass/fail line each.

The same checks back the ``k3lat verify-paper`` CLI command; here each
criterion is its own test so a failure pinpoints the broken claim.  All
tolerances are exact (integer/rational equality); the two seeded criteria use
the fixed default seed.
"""

import pytest

from k3lat.cli import run
from k3lat.verify import CRITERIA, DEFAULT_SEED


@pytest.mark.parametrize(
    "number,title,func", CRITERIA, ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA]
)
def test_criterion(number, title, func):
    try:
        detail = func()
    except AssertionError:
        print(f"[FAIL] criterion {number}: {title}")
        raise
    print(f"[PASS] criterion {number}: {title}")
    assert detail is not None


def test_verify_paper_cli_is_superset():
    result = run(["verify-paper", "--seed", str(DEFAULT_SEED)])
    assert result.status == "ok"
    assert result.exit_code == 0
    assert result.payload["all_passed"] is True
    assert len(result.payload["results"]) == len(CRITERIA)
    assert all(line.startswith("[PASS]") for line in result.diagnostics)
