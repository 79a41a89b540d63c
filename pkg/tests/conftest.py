import pytest

from biliaison.ring import FieldContext, RingContext

QUADRIC = "x0*x1 + x2*x3 + x4^2"


@pytest.fixture(scope="session")
def P3():
    """Coordinate ring of projective 3-space over GF(32003)."""
    return RingContext(FieldContext(), 4)


@pytest.fixture(scope="session")
def quadric_ring():
    """Cone over the smooth quadric 3-fold in P^4."""
    return RingContext(FieldContext(), 5, QUADRIC)
