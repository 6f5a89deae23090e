import pytest

from parnum import conversion as cv
from parnum import numsystem as ns
from parnum import ring, rules


@pytest.fixture(scope="session")
def golden_ctx():
    return ring.make_context((-1, -1, 1))


@pytest.fixture(scope="session")
def avizienis():
    """(system, rule, certificate) for base 10 over digits -6..6."""
    return rules.avizienis_base10()


@pytest.fixture(scope="session")
def sqrt5_rule():
    """(system, rule, certificate) for base sqrt(5) over digits -3..3."""
    return rules.sqrt5_interleaved()


@pytest.fixture(scope="session")
def base2_012():
    sys = ns.build_system((-2, 1), (2,), [(0,), (1,), (2,)])
    found = cv.search_rule(sys, 2, 2, 2)
    assert found is not None
    return (sys,) + found


@pytest.fixture(scope="session")
def base2_signed():
    sys = ns.build_system((-2, 1), (2,), [(-1,), (0,), (1,)])
    found = cv.search_rule(sys, 2, 2, 1)
    assert found is not None
    return (sys,) + found
