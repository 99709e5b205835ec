import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))   # for the oracles module

from ordrep.cone import PolyCone
from ordrep.space import CalibratedSpace, PolyhedralSeminorm, sup_seminorm

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rats = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def vectors(dim, elements=small_rats):
    return st.tuples(*[elements] * dim)


ORTHANT = PolyCone(2, [(1, 0), (0, 1)])
WEDGE = PolyCone(2, [(4, 1), (8, 1)])


@pytest.fixture
def orthant_sup():
    return CalibratedSpace(ORTHANT, [sup_seminorm(2)])


@pytest.fixture
def orthant_l1():
    return CalibratedSpace(ORTHANT, [PolyhedralSeminorm("l1", [(1, 1), (1, -1)])])


@pytest.fixture
def orthant_abs():
    """The first-coordinate seminorm, with the sup-norm added so the family separates."""
    return CalibratedSpace(ORTHANT, [PolyhedralSeminorm("abs_first", [(1, 0)]), sup_seminorm(2)])


@pytest.fixture
def wedge_sup():
    return CalibratedSpace(WEDGE, [sup_seminorm(2)])


@pytest.fixture
def trivial_sup():
    return CalibratedSpace(PolyCone(2), [sup_seminorm(2)])


@pytest.fixture
def orthant_antidiag():
    """Rows {(1,-1)} alone: not separating, built without validation."""
    return CalibratedSpace(ORTHANT, [PolyhedralSeminorm("antidiag", [(1, -1)])], validate=False)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        passed, detail = RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
