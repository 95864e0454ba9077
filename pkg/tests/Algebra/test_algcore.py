"""Test A(g) core module."""
# third-party
import pytest
from sympy import QQ

# first-party
from chevalley_algebra.algcore import (
    AlgebraTable,
    adjoint_action,
    build_algebra,
    build_basis,
    counit,
    counit_split,
    e_s,
    kernel_elements,
    p_map,
    product,
    s_map,
    s_operator,
    s_plus,
    split_by_counit,
    split_counit,
    structure_table,
    sym_product,
)
from chevalley_algebra.chevalley import LieAlgebra
from chevalley_algebra.exactla import entries
from chevalley_algebra.unitize import random_element
from chevalley_algebra.utils import ValidationError, seeded_rng

from .app import algebra_table, lie_algebra


def test_sl2_table(table_a1: AlgebraTable):
    """Testing A(sl2) is one-dimensional with S(HH) = 8 Id.

    Setup and Test
    * validate the single basis pair H*H.
    * validate e = S(HH) / 8, S(HH)^2 = 8 S(HH), epsilon = 8 and tau = 64.
    * validate P(HH) H = 8 H.

    Args:
        table_a1 (fixture): The A(sl2) table.
    """
    assert table_a1.basis_pairs == ((0, 0),), f'basis: {table_a1.basis_pairs}'
    assert table_a1.unit_coords == {0: QQ(1, 8)}, f'unit: {table_a1.unit_coords}'
    assert table_a1.prod_const == {(0, 0): {0: QQ(8)}}, f'table: {table_a1.prod_const}'
    assert table_a1.epsilon == (QQ(8),), f'epsilon: {table_a1.epsilon}'
    assert table_a1.tau_gram == ((QQ(64),),), f'tau: {table_a1.tau_gram}'
    assert table_a1.basis_ops[0].equals_scalar(8), 'S(HH) is not 8 Id'
    assert p_map(table_a1.lie, 0, 0).apply({0: QQ.one}) == {0: QQ(8)}, 'P(HH) H'


@pytest.mark.parametrize('name,expected', [('A1', 1), ('A2', 9), ('B2', 20), ('G2', 28)])
def test_dimension(name: str, expected: int):
    """Testing dim A(g) for the small types.

    Args:
        name (str): The Lie type.
        expected (int): The expected dim A.
    """
    t = algebra_table(name)
    assert t.dim_a == expected, f'dim A: {t.dim_a}'
    assert len(t.labels) == expected, f'labels: {t.labels}'


@pytest.mark.slow
def test_dimension_f4():
    """Testing dim A(F4) = 325."""
    t = build_basis(lie_algebra('F4'))
    assert t.dim_a == 325, f'dim A: {t.dim_a}'


@pytest.mark.parametrize('name', ['A2', 'B2', 'G2'])
def test_s_map_identities(name: str):
    """Testing K-symmetry and Tr S(X_i X_j) = (h_check + 1) K(X_i, X_j).

    Args:
        name (str): The Lie type.
    """
    L = lie_algebra(name)
    for i in range(L.dim):
        for j in range(i, L.dim):
            op = s_map(L, i, j)
            assert not op.k_symmetry_residual(L), f'S({L.labels[i]}*{L.labels[j]}) not symmetric'
            assert op.trace() == (L.h_check + 1) * L.killing[i][j], f'trace at ({i}, {j})'
    assert s_operator(L, e_s(L)).equals_scalar(L.h_check + 1), 'S(e_S)'


@pytest.mark.parametrize('name', ['A1', 'A2', 'B2', 'G2'])
def test_unit_and_counit(name: str):
    """Testing e a = a on the basis and epsilon(e) = 1.

    Args:
        name (str): The Lie type.
    """
    t = algebra_table(name)
    for a in range(t.dim_a):
        assert t.multiply(t.unit, {a: QQ.one}) == {a: QQ.one}, f'e b_{a}'
    assert counit(t, t.unit) == 1, f'epsilon(e): {counit(t, t.unit)}'


def test_product_matches_expansion(table_a2: AlgebraTable, table_g2: AlgebraTable):
    """Testing the cached structure constants against the direct product expansion.

    Args:
        table_a2 (fixture): The A(sl3) table.
        table_g2 (fixture): The A(G2) table.
    """
    rng = seeded_rng(0, 'test-product')
    for t in (table_a2, table_g2):
        for _ in range(3):
            u = random_element(rng, t.dim_a, support=4)
            v = random_element(rng, t.dim_a, support=4)
            assert t.multiply(u, v) == product(t, u, v), f'{t.lie.name}: {u}, {v}'
            assert t.multiply(u, v) == t.multiply(v, u), f'{t.lie.name} commutativity'


def test_kernel_elements(lie_a2: LieAlgebra, table_a2: AlgebraTable):
    """Testing ker S has dimension dim Sym^2 g - dim A.

    Args:
        lie_a2 (fixture): The sl3 Lie algebra.
        table_a2 (fixture): The A(sl3) table.
    """
    kernel = kernel_elements(table_a2)
    assert len(kernel) == 36 - 9, f'kernel: {len(kernel)}'
    for w in kernel:
        assert s_operator(lie_a2, w).is_zero(), f'S({w}) != 0'


def test_adjoint_action_equivariance(lie_g2: LieAlgebra):
    """Testing S([Z,A]B + A[Z,B]) = [ad Z, S(AB)].

    Args:
        lie_g2 (fixture): The G2 Lie algebra.
    """
    rng = seeded_rng(1, 'test-equivariance')
    for _ in range(3):
        z = random_element(rng, lie_g2.dim, support=3)
        w = sym_product(random_element(rng, lie_g2.dim, support=3), {0: QQ.one})
        lhs = s_operator(lie_g2, adjoint_action(lie_g2, z, w)).to_domain_matrix()
        s = s_operator(lie_g2, w).to_domain_matrix()
        ad = lie_g2.ad_matrix(z)
        assert not entries(lhs - (ad * s - s * ad)), f'equivariance fails at {z}'


def test_counit_split(table_b2: AlgebraTable):
    """Testing the splitting A = k e + ker epsilon.

    Args:
        table_b2 (fixture): The A(so5) table.
    """
    split = counit_split(table_b2)
    assert split.algebra.dim == table_b2.dim_a, f'dim: {split.algebra.dim}'
    assert split_counit(table_b2) == split.algebra, 'split_counit differs from counit_split'
    assert split.algebra.dim_v == table_b2.dim_a - 1, f'dim V: {split.algebra.dim_v}'
    rng = seeded_rng(2, 'test-split')
    for _ in range(3):
        x = random_element(rng, table_b2.dim_a)
        assert split.from_table(split.to_table(x)) == x, 'coordinate maps are not inverse'
    assert split.from_table(table_b2.unit) == {0: QQ.one}, 'e must map to (1, 0)'

    w = sym_product({table_b2.lie.rank: QQ.one}, {table_b2.lie.dim - 1: QQ.one})
    assert counit(table_b2, s_plus(table_b2, w)) == 0, 'S_+ must land in ker epsilon'

    with pytest.raises(ValidationError):
        split_by_counit(table_b2, table_b2.unit, tuple(2 * v for v in table_b2.epsilon))


def test_threads_deterministic(lie_a2: LieAlgebra, table_a2: AlgebraTable):
    """Testing the worker pool fills the same table as a single process.

    Args:
        lie_a2 (fixture): The sl3 Lie algebra.
        table_a2 (fixture): The A(sl3) table.
    """
    pooled = structure_table(build_basis(lie_a2), threads=2)
    assert pooled.prod_const == table_a2.prod_const, 'pooled table differs'
    assert pooled.tau_gram == table_a2.tau_gram, 'pooled tau differs'
    assert build_algebra(lie_a2).basis_pairs == table_a2.basis_pairs, 'basis is not deterministic'
