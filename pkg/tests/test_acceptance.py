"""One test per acceptance criterion, each at its stated tolerance.

Every test prints a single [PASS]/[FAIL] line; the terminal summary repeats
all of them. The checks live in weylheat.verification so that
``weylheat verify-all`` runs the identical code.
"""

import pytest

from weylheat import verification as v


@pytest.mark.parametrize("check", v.CHECKS, ids=lambda f: f.__name__)
def test_criterion(check, acceptance_record):
    result = check()
    acceptance_record(result)
    assert result.passed, result.line()


def test_report_format_counts_every_criterion():
    results = [v.CheckResult(i, "x", i % 2 == 0, "d") for i in range(1, 13)]
    report = v.format_report(results).splitlines()
    assert len(report) == 13
    assert report[-1] == "6/12 criteria passed"
    assert report[0] == "[FAIL]  1 x: d"
