import numpy as np
import pytest

from pdmdirac import profiles as pf
from pdmdirac.algebra import FamilyClass, FamilySpec, build_family

UNIT = pf.Interval(-1.0, 1.0, True, True)
OUTER = pf.Interval(1.0, 10.0, True, False)


@pytest.fixture(scope="session")
def grid_unit():
    return pf.Grid(UNIT, 2001, 1e-3)


@pytest.fixture(scope="session")
def grid_outer():
    return pf.Grid(OUTER, 2001, 1e-3)


@pytest.fixture(scope="session")
def grid_line():
    return pf.Grid(pf.Interval(-8.0, 8.0), 2001, 1e-3)


@pytest.fixture(scope="session")
def family_smooth():
    """Finite-interval family: F = x, G = sqrt(1-x^2), M = 1/(1-x^2)^2."""
    spec = FamilySpec(FamilyClass.OMEGA_NEGATIVE, b=1.0, c=0.0,
                      u=pf.artanh(), k=0.5, s=0.5)
    return build_family(spec)


@pytest.fixture(scope="session")
def family_outer():
    """Outer-region family at coupling b = -1: decaying lowest state."""
    spec = FamilySpec(FamilyClass.OMEGA_POSITIVE, b=-1.0, c=0.0,
                      u=pf.arccoth(OUTER), k=0.5, s=0.5)
    return build_family(spec)


@pytest.fixture(scope="session")
def family_const_k1():
    """Constant-mass family, b = 0.5, k = 1 (sech-type well)."""
    spec = FamilySpec(FamilyClass.OMEGA_NEGATIVE, b=0.5, c=0.0,
                      u=pf.identity(), k=1.0, s=1.0)
    return build_family(spec)


def sup(a):
    return float(np.max(np.abs(a)))
