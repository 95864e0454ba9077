"""Testing conf module."""
# third-party
import pytest
from click.testing import CliRunner

# first-party
from chevalley_algebra.algcore import AlgebraTable
from chevalley_algebra.chevalley import LieAlgebra

from .Algebra.app import algebra_table, lie_algebra


@pytest.fixture(scope='session')
def lie_a1() -> LieAlgebra:
    """Create the sl2 fixture."""
    return lie_algebra('A1')


@pytest.fixture(scope='session')
def lie_a2() -> LieAlgebra:
    """Create the sl3 fixture."""
    return lie_algebra('A2')


@pytest.fixture(scope='session')
def lie_b2() -> LieAlgebra:
    """Create the so5 fixture."""
    return lie_algebra('B2')


@pytest.fixture(scope='session')
def lie_g2() -> LieAlgebra:
    """Create the G2 fixture."""
    return lie_algebra('G2')


@pytest.fixture(scope='session')
def table_a1() -> AlgebraTable:
    """Create the A(sl2) table fixture."""
    return algebra_table('A1')


@pytest.fixture(scope='session')
def table_a2() -> AlgebraTable:
    """Create the A(sl3) table fixture."""
    return algebra_table('A2')


@pytest.fixture(scope='session')
def table_b2() -> AlgebraTable:
    """Create the A(so5) table fixture."""
    return algebra_table('B2')


@pytest.fixture(scope='session')
def table_g2() -> AlgebraTable:
    """Create the A(G2) table fixture."""
    return algebra_table('G2')


@pytest.fixture
def runner() -> CliRunner:
    """Create the click testing runner fixture."""
    return CliRunner()
