"""Golden-fixture conformance.

Every committed fixture value must be reproduced by the production code
paths to 1e-10 relative (1e-6 for the regularized-at-pole cases), without
the generator package installed.
"""

import pytest

from hyperfns import fixtures


def _cases():
    return fixtures.load_cases()


@pytest.mark.parametrize("case", _cases(), ids=lambda c: c.case_id)
def test_fixture_conformance(case):
    got = fixtures.evaluate_case(case)
    scale = max(abs(case.expected), 1e-300)
    assert abs(got - case.expected) / scale <= case.tol


def test_fixture_inventory():
    cases = _cases()
    assert len(cases) >= 20
    prefixes = {c.case_id.split("/")[0] for c in cases}
    assert {"loggamma", "hyp2f1", "bcoeff", "gamma_tilde", "gamma", "phi",
            "cfun", "eis_closed", "eis_series", "eis_reg", "fourier"} <= prefixes


def test_fixture_digits_recorded():
    for case in _cases():
        assert case.digits >= 25
