"""Test exact linear algebra module."""
# standard library
from fractions import Fraction

# third-party
import pytest
from sympy import QQ

# first-party
from chevalley_algebra.exactla import (
    EchelonBasis,
    axpy,
    column_reduction,
    independent_subset,
    inverse,
    kernel,
    modular_rank,
    rank,
    rational_eigenvalues,
    solve,
    to_matrix,
    to_rows,
    trace,
)
from chevalley_algebra.utils import (
    CheckResult,
    ValidationError,
    control_dict,
    format_element,
    format_rational,
    parse_rational,
    seeded_rng,
    to_rational,
)


@pytest.mark.parametrize(
    'rows,expected',
    [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[0, 0], [0, 0]], 0),
        ([['1/2', '1/3'], ['1/4', '1/6']], 1),
        ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 2),
    ],
)
def test_rank(rows: list, expected: int):
    """Testing exact rank with and without the modular pre-pass.

    Setup and Test
    * build the matrix over QQ.
    * validate the rank with the modular pass and with rational elimination only.
    * validate the modular rank is a lower bound.

    Args:
        rows (list): The matrix rows.
        expected (int): The expected rank.
    """
    m = to_matrix(rows)
    assert rank(m) == expected, f'rank: {rank(m)}'
    assert rank(m, primes=None) == expected, f'rank without modular pass: {rank(m, None)}'
    assert modular_rank(m) <= expected, f'modular rank: {modular_rank(m)}'


def test_solve():
    """Testing exact solutions and inconsistent systems."""
    x = solve(to_matrix([[2, 0], [0, 4]]), [1, 1])
    assert x == [QQ(1, 2), QQ(1, 4)], f'solution: {x}'

    x = solve(to_matrix([[1, 1], [1, 1]]), [1, 2])
    assert x is None, f'inconsistent system returned {x}'

    with pytest.raises(ValidationError):
        solve(to_matrix([[1, 1]]), [1, 2])


def test_kernel_and_inverse():
    """Testing kernel vectors and the exact inverse."""
    basis = kernel(to_matrix([[1, 1]]))
    assert basis == [[QQ(-1), QQ(1)]], f'kernel: {basis}'

    m = to_matrix([[2, 1], [1, 1]])
    rows = to_rows(inverse(m))
    assert rows == [[QQ(1), QQ(-1)], [QQ(-1), QQ(2)]], f'inverse: {rows}'

    with pytest.raises(ValidationError):
        inverse(to_matrix([[1, 2]]))


def test_independent_subset_and_column_reduction():
    """Testing the lexicographically first independent subset and column coordinates."""
    vectors = [[1, 0], [2, 0], [0, 1], [1, 1]]
    assert independent_subset(vectors) == [0, 2], f'subset: {independent_subset(vectors)}'
    assert independent_subset([{0: 1}, {1: 1}], primes=(101,)) == [0, 1]

    pivots, coords = column_reduction([{0: QQ(1)}, {0: QQ(2)}, {1: QQ(1)}], 2)
    assert pivots == (0, 2), f'pivots: {pivots}'
    assert coords[1] == {0: QQ(2)}, f'coords: {coords}'


def test_echelon_basis():
    """Testing the incremental echelon basis."""
    span = EchelonBasis()
    assert span.add({0: QQ(2), 1: QQ(1)}) is True
    assert span.add({0: QQ(4), 1: QQ(2)}) is False
    assert span.add({1: QQ(3)}) is True
    assert len(span) == 2, f'dimension: {len(span)}'
    assert span.contains({0: QQ(1)}), 'span should be the whole plane'
    assert span.reduce({0: QQ(5), 1: QQ(7)}) == {}


def test_rational_eigenvalues():
    """Testing rational eigenvalues and irreducible factors of the characteristic polynomial."""
    roots, others = rational_eigenvalues(to_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
    assert roots == {QQ(1): 2, QQ(2): 1}, f'roots: {roots}'
    assert not others, f'others: {others}'

    roots, others = rational_eigenvalues(to_matrix([[0, -1], [1, 0]]))
    assert not roots, f'roots: {roots}'
    assert len(others) == 1, f'others: {others}'


def test_axpy_and_trace():
    """Testing sparse accumulation and the trace."""
    acc = {0: QQ(1), 1: QQ(2)}
    axpy(acc, {1: QQ(1), 2: QQ(1)}, -2)
    assert acc == {0: QQ(1), 2: QQ(-2)}, f'acc: {acc}'
    assert trace(to_matrix([[1, 2], [3, 4]])) == 5


@pytest.mark.parametrize(
    'value,expected',
    [
        ('3/4', QQ(3, 4)),
        ('-2', QQ(-2)),
        ('6/4', QQ(3, 2)),
        (Fraction(1, 3), QQ(1, 3)),
        (7, QQ(7)),
    ],
)
def test_to_rational(value: object, expected: object):
    """Testing conversion to exact rationals.

    Args:
        value (object): The input value.
        expected (object): The expected QQ element.
    """
    assert to_rational(value) == expected, f'value: {to_rational(value)}'


@pytest.mark.parametrize('text', ['x', '1/0', '1.5', ''])
def test_parse_rational_rejects(text: str):
    """Testing malformed rational strings.

    Args:
        text (str): The malformed text.
    """
    with pytest.raises(ValidationError):
        parse_rational(text)


def test_format_rational():
    """Testing the "p/q" text format."""
    assert format_rational(QQ(6, 3)) == '2'
    assert format_rational(QQ(-1, 4)) == '-1/4'
    assert format_element({2: QQ(1, 2), 0: QQ(3), 1: QQ(0)}) == {'0': '3', '2': '1/2'}


def test_control_dict_and_rng():
    """Testing control dict merging and seeded random streams."""
    merged = control_dict({'seed': 0, 'samples': 20}, {'samples': None, 'seed': 4})
    assert merged == {'seed': 4, 'samples': 20}, f'merged: {merged}'

    first = [seeded_rng(3, 'a').random() for _ in range(2)]
    assert first[0] == first[1], 'seeded streams must be reproducible'
    assert seeded_rng(3, 'a').random() != seeded_rng(3, 'b').random(), 'salts must differ'


def test_check_result():
    """Testing check result state changes and serialization."""
    result = CheckResult('demo')
    assert not result.failed
    result.fail({'x': '1'}, extra=2)
    assert result.failed
    data = result.to_dict()
    assert data['status'] == 'fail', f'data: {data}'
    assert data['witness'] == {'x': '1'}, f'data: {data}'
    assert data['detail'] == {'extra': 2}, f'data: {data}'
    skipped = CheckResult('other').skip('not applicable')
    assert skipped.status == 'skipped' and skipped.detail['reason'] == 'not applicable'
