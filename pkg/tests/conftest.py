import pytest
from hypothesis import strategies as st

from dp1kit.lattice import SURFACE, PicClass

coeff = st.integers(min_value=-30, max_value=30)


@st.composite
def surface_classes(draw):
    return PicClass(SURFACE, tuple(draw(coeff) for _ in range(9)))


@pytest.fixture(scope="session")
def h():
    from dp1kit.lattice import unit
    return unit(SURFACE, 0)


@pytest.fixture(scope="session")
def e():
    from dp1kit.lattice import unit
    return [None] + [unit(SURFACE, i) for i in range(1, 9)]
