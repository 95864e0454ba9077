"""Test Chevalley basis module."""
# third-party
import pytest
from sympy import QQ

# first-party
from chevalley_algebra.chevalley import (
    LieAlgebra,
    build_chevalley,
    casimir_operator,
    jacobi_residuals,
    orthogonal_cartan_basis,
)
from chevalley_algebra.rootsys import build_root_system, parse_type

from ..Algebra.app import lie_algebra


def test_sl2_brackets(lie_a1: LieAlgebra):
    """Testing the sl2 triple H, E, F.

    Setup and Test
    * locate E = X(1) and F = X(-1).
    * validate [E, F] = H, [H, E] = 2E, [H, F] = -2F.
    * validate K(E, F) = 4 and K(H, H) = 8.

    Args:
        lie_a1 (fixture): The sl2 Lie algebra.
    """
    assert lie_a1.labels == ('H1', 'X(-1)', 'X(1)'), f'labels: {lie_a1.labels}'
    e, f = lie_a1.root_index[(1,)], lie_a1.root_index[(-1,)]
    assert lie_a1.bracket_basis(e, f) == {0: 1}, f'[E,F]: {lie_a1.bracket_basis(e, f)}'
    assert lie_a1.bracket_basis(0, e) == {e: 2}, f'[H,E]: {lie_a1.bracket_basis(0, e)}'
    assert lie_a1.bracket_basis(0, f) == {f: -2}, f'[H,F]: {lie_a1.bracket_basis(0, f)}'
    assert lie_a1.killing[e][f] == 4, f'K(E,F): {lie_a1.killing[e][f]}'
    assert lie_a1.killing[0][0] == 8, f'K(H,H): {lie_a1.killing[0][0]}'


@pytest.mark.parametrize(
    'name,long_value,short_value',
    [('A1', 4, 4), ('A2', 6, 6), ('B2', 6, 12), ('G2', 8, 24)],
)
def test_killing_root_pairing(name: str, long_value: int, short_value: int):
    """Testing K(X_alpha, X_-alpha) = 2 nu_alpha h_check.

    Args:
        name (str): The Lie type.
        long_value (int): The expected value on long roots.
        short_value (int): The expected value on short roots.
    """
    L = lie_algebra(name)
    d = L.datum
    for alpha in d.positive_roots:
        i, j = L.root_index[alpha], L.root_index[tuple(-c for c in alpha)]
        expected = long_value if d.is_long(alpha) else short_value
        assert L.killing[i][j] == expected, f'{alpha}: {L.killing[i][j]}'


@pytest.mark.parametrize('name', ['A1', 'A2', 'B2', 'G2'])
def test_dual_basis_and_casimir(name: str):
    """Testing K(X_i, Y_j) = delta_ij and sum ad(X_i) ad(Y_i) = Id.

    Args:
        name (str): The Lie type.
    """
    L = lie_algebra(name)
    for i in range(L.dim):
        for j in range(L.dim):
            value = L.killing_form({i: QQ.one}, L.dual[j])
            assert value == (1 if i == j else 0), f'K(X_{i}, Y_{j}): {value}'
    casimir = casimir_operator(L)
    assert casimir == {(l, l): QQ.one for l in range(L.dim)}, 'Casimir is not the identity'


@pytest.mark.parametrize('name', ['B3', 'C3', 'D4'])
def test_build_classical(name: str):
    """Testing Jacobi certification and the Killing form for rank three and four types.

    Args:
        name (str): The Lie type.
    """
    L = build_chevalley(build_root_system(parse_type(name)))
    assert not jacobi_residuals(L), f'{name} Jacobi residuals'
    assert L.dim == L.datum.dim, f'dim: {L.dim}'


@pytest.mark.slow
def test_build_f4():
    """Testing the F4 Chevalley basis."""
    L = build_chevalley(build_root_system(parse_type('F4')))
    assert L.dim == 52, f'dim: {L.dim}'
    assert not jacobi_residuals(L), 'F4 Jacobi residuals'


def test_g2_structure_constants(lie_g2: LieAlgebra):
    """Testing N_{alpha,beta} = -N_{beta,alpha} and |N_{alpha,beta}| = p + 1.

    Args:
        lie_g2 (fixture): The G2 Lie algebra.
    """
    d = lie_g2.datum
    for alpha in d.roots:
        for beta in d.roots:
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            if not d.is_root(gamma):
                continue
            n = lie_g2.structure_constant(alpha, beta)
            assert n == -lie_g2.structure_constant(beta, alpha), f'{alpha}, {beta}: {n}'
            p = 0
            while d.is_root(tuple(b - (p + 1) * a for a, b in zip(alpha, beta))):
                p += 1
            assert abs(n) == p + 1, f'|N({alpha}, {beta})| = {n}, p = {p}'
    assert lie_g2.structure_constant((0, 1), (1, 0)) == 1, 'extraspecial sign'


def test_orthogonal_cartan_basis(lie_b2: LieAlgebra):
    """Testing the Gram-Schmidt Cartan basis is K-orthogonal.

    Args:
        lie_b2 (fixture): The B2 Lie algebra.
    """
    basis = orthogonal_cartan_basis(lie_b2)
    assert len(basis) == 2, f'basis: {basis}'
    assert lie_b2.killing_form(basis[0], basis[1]) == 0, 'basis is not orthogonal'
    assert all(lie_b2.killing_form(u, u) != 0 for u in basis), 'isotropic basis vector'
