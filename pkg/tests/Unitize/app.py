"""Small commutative algebras used for testing."""
# third-party
from sympy import QQ

# first-party
from chevalley_algebra.algcore import split_by_counit
from chevalley_algebra.unitize import TableAlgebra, UnitizedAlgebra, make_unitized


def diagonal_algebra(n: int = 3) -> TableAlgebra:
    """Return k^n with coordinatewise product."""
    table = {(a, a): {a: QQ.one} for a in range(n)}
    return TableAlgebra(n, table, unit={a: QQ.one for a in range(n)})


def diagonal_unitized(n: int = 3) -> UnitizedAlgebra:
    """Return k^n split by its trace counit as Unit(V, f)."""
    algebra = diagonal_algebra(n)
    epsilon = tuple(QQ(1, n) for _ in range(n))
    return split_by_counit(algebra, algebra.unit, epsilon).algebra


def spin_factor(dim_v: int = 3) -> UnitizedAlgebra:
    """Return Unit(V, f) with a zero product on V and the identity form."""
    identity = [[1 if a == b else 0 for b in range(dim_v)] for a in range(dim_v)]
    return make_unitized(dim_v, {}, identity)


# V = k^2 with e1.e1 = e2, e1.e2 = e1, e2.e2 = 0 and the identity form
V_TABLE_DOCUMENT = {
    'dimV': 2,
    'dot': [[0, 0, 1, '1'], [0, 1, 0, '1']],
    'form': [[0, 0, '1'], [1, 1, '1']],
}


def twisted_plane() -> UnitizedAlgebra:
    """Return Unit(V, f) for the V-table document."""
    return make_unitized(
        2,
        {(0, 0): {1: QQ.one}, (0, 1): {0: QQ.one}},
        {(0, 0): QQ.one, (1, 1): QQ.one},
    )
