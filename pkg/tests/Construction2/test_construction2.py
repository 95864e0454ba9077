"""Test representation and sigma module."""
# standard library
import json

# third-party
import pytest
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# first-party
from chevalley_algebra.algcore import AlgebraTable, e_s
from chevalley_algebra.chevalley import LieAlgebra
from chevalley_algebra.construction2 import (
    Representation,
    Sl3ModelAlgebra,
    adjoint_rep,
    check_pi_proj,
    is_zero,
    load_rep,
    make_representation,
    mixed_trace_residual,
    natural_rep_sl3,
    okubo_alpha,
    project_to_image,
    quartic_trace_residual,
    rep_alpha,
    save_rep,
    sigma,
    sigma_coords,
    sigma_equivariance_residual,
    sigma_kernel_residuals,
    sigma_rank,
    sigma_table_comparison,
    sl3_model_product,
)
from chevalley_algebra.unitize import random_element
from chevalley_algebra.utils import ValidationError, seeded_rng


def _diag(*values) -> DomainMatrix:
    return DomainMatrix({i: {i: QQ(v)} for i, v in enumerate(values) if v}, (3, 3), QQ)


@pytest.fixture(scope='module')
def natural(lie_a2: LieAlgebra) -> Representation:
    """Create the natural sl3 representation fixture."""
    return natural_rep_sl3(lie_a2)


def test_natural_representation(natural: Representation):
    """Testing the trace normalization of the natural sl3 module.

    Setup and Test
    * build rho from the matrix units E12, E23 and their transposes.
    * validate mu = 4/9, Tr(rho(x) rho(y)) = K(x, y) / 6 and alpha = 1/72.

    Args:
        natural (fixture): The natural sl3 representation.
    """
    assert natural.dim_v == 3, f'dim V: {natural.dim_v}'
    assert natural.mu == QQ(4, 9), f'mu: {natural.mu}'
    assert natural.trace_scale == QQ(1, 6), f'trace scale: {natural.trace_scale}'
    assert rep_alpha(natural) == QQ(1, 72), f'alpha: {rep_alpha(natural)}'


@pytest.mark.parametrize(
    'mu,dim_v,dim_g,expected',
    [
        (1, 14, 14, QQ(5, 32)),
        (1, 8, 8, QQ(1, 4)),
        (1, 52, 52, QQ(5, 108)),
        (QQ(4, 9), 3, 8, QQ(1, 72)),
    ],
)
def test_okubo_alpha(mu: object, dim_v: int, dim_g: int, expected: object):
    """Testing the quartic trace constant.

    Args:
        mu (object): The Casimir eigenvalue.
        dim_v (int): The module dimension.
        dim_g (int): dim G.
        expected (object): The expected constant.
    """
    value = okubo_alpha(mu, dim_v, dim_g)
    assert value == expected, f'alpha: {value}'


def test_quartic_trace_identities(natural: Representation, lie_g2: LieAlgebra):
    """Testing Tr(rho(x)^4) = alpha K(x, x)^2 and its polarization.

    Args:
        natural (fixture): The natural sl3 representation.
        lie_g2 (fixture): The G2 Lie algebra.
    """
    rng = seeded_rng(0, 'test-quartic')
    adjoint = adjoint_rep(lie_g2)
    for _ in range(3):
        x = random_element(rng, 8)
        assert quartic_trace_residual(natural, x) == 0, f'sl3 natural at {x}'
        x, y = random_element(rng, 14), random_element(rng, 14)
        assert quartic_trace_residual(adjoint, x) == 0, f'G2 adjoint at {x}'
        assert mixed_trace_residual(adjoint, x, y) == 0, f'G2 adjoint at {x}, {y}'


def test_rejects_bad_matrices(lie_a2: LieAlgebra, lie_g2: LieAlgebra, natural: Representation):
    """Testing validation of candidate representation matrices.

    Args:
        lie_a2 (fixture): The sl3 Lie algebra.
        lie_g2 (fixture): The G2 Lie algebra.
        natural (fixture): The natural sl3 representation.
    """
    with pytest.raises(ValidationError, match='Expected 8 matrices'):
        make_representation(lie_a2, natural.matrices[:7])

    broken = list(natural.matrices)
    broken[0] = broken[0] * QQ(2)
    with pytest.raises(ValidationError, match='Commutator check failed for'):
        make_representation(lie_a2, broken)

    with pytest.raises(ValidationError, match='needs A2'):
        natural_rep_sl3(lie_g2)


def test_rep_file_round_trip(tmp_path: object, lie_a2: LieAlgebra, natural: Representation):
    """Testing the representation JSON format.

    Args:
        tmp_path (fixture): Pytest temporary directory.
        lie_a2 (fixture): The sl3 Lie algebra.
        natural (fixture): The natural sl3 representation.
    """
    path = tmp_path / 'sl3.json'
    save_rep(natural, path)
    data = json.loads(path.read_text())
    assert data['type'] == 'A2' and data['dimV'] == 3, f'data: {data}'
    loaded = load_rep(path, lie_a2)
    assert loaded.mu == natural.mu, f'mu: {loaded.mu}'
    for got, expected in zip(loaded.matrices, natural.matrices):
        assert got.to_list() == expected.to_list(), 'matrices differ after reload'

    data['type'] = 'G2'
    path.write_text(json.dumps(data))
    with pytest.raises(ValidationError, match='Representation is for G2'):
        load_rep(path, lie_a2)

    path.write_text('{not json')
    with pytest.raises(ValidationError):
        load_rep(path, lie_a2)


def test_sl3_model_product():
    """Testing the matrix model product on M_3(QQ)."""
    p = _diag(1, -1, 0)
    assert sl3_model_product(p, p).to_list() == _diag(QQ(1, 3), QQ(1, 3), QQ(1, 3)).to_list()

    model = Sl3ModelAlgebra()
    rng = seeded_rng(0, 'test-model')
    for _ in range(3):
        q = random_element(rng, 9)
        assert model.multiply(model.unit, q) == q, f'I * Q != Q for {q}'


def test_sigma_on_sl3(natural: Representation, table_a2: AlgebraTable, lie_a2: LieAlgebra):
    """Testing sigma is a bijective equivariant map carrying A(sl3) onto the matrix model.

    Args:
        natural (fixture): The natural sl3 representation.
        table_a2 (fixture): The A(sl3) table.
        lie_a2 (fixture): The sl3 Lie algebra.
    """
    unit = sigma_coords(natural, table_a2, table_a2.unit)
    assert unit.to_list() == _diag(1, 1, 1).to_list(), 'sigma(e) is not the identity'
    assert is_zero(sigma(natural, e_s(lie_a2)) - _diag(4, 4, 4)), 'sigma(S(e_S)) = 4 Id'
    assert sigma_rank(natural, table_a2) == 9, 'sigma is not bijective'
    assert not sigma_kernel_residuals(natural, table_a2), 'sigma does not vanish on ker S'
    assert sigma_table_comparison(table_a2, natural) == [], 'model product mismatch'
    for z in range(lie_a2.dim):
        w = {table_a2.basis_pairs[z % table_a2.dim_a]: QQ.one}
        assert is_zero(sigma_equivariance_residual(natural, {z: QQ.one}, w)), f'z = {z}'


def test_projection(natural: Representation):
    """Testing the trace-form projection fixes rho(g) and the identity projects to zero.

    Args:
        natural (fixture): The natural sl3 representation.
    """
    rng = seeded_rng(0, 'test-projection')
    x = random_element(rng, 8)
    m = natural.rho(x)
    assert is_zero(project_to_image(natural, m) - m), 'projection does not fix rho(g)'
    assert is_zero(project_to_image(natural, _diag(1, 1, 1))), 'identity has a g component'
    assert check_pi_proj(natural).status == 'skipped'


def test_sigma_rejects_unsupported(lie_a2: LieAlgebra):
    """Testing sigma refuses modules outside the supported list.

    Args:
        lie_a2 (fixture): The sl3 Lie algebra.
    """
    with pytest.raises(ValidationError, match='sigma is defined for'):
        sigma(adjoint_rep(lie_a2), e_s(lie_a2))
