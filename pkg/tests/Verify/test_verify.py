"""Test verification suite module."""
# standard library
import dataclasses
import json

# third-party
import pytest
from sympy import QQ

# first-party
from chevalley_algebra.algcore import AlgebraTable
from chevalley_algebra.chevalley import LieAlgebra
from chevalley_algebra.construction2 import natural_rep_sl3
from chevalley_algebra.verify import (
    VerificationReport,
    VerificationSuite,
    check_casimir,
    check_idempotent_spectrum,
    check_okubo,
    check_power_associativity,
    check_sl3_model,
    check_tau_assoc,
    check_unit,
    check_v_product,
    paired_root_values,
    peirce_data,
    regular_components,
)

from ..Algebra.app import algebra_table, lie_algebra

CHECK_NAMES = [
    'dimension',
    'unit',
    'casimir',
    'trace_identity',
    'tau_assoc',
    'tau_nondeg',
    'high_wt',
    'okubo',
    'jordan_subalgebra',
    'v_product',
    'hwv_regular',
    'idempotent_spectrum',
    'simplicity',
    'power_associativity',
    'unitize_round_trip',
    'sl3_model',
]


@pytest.mark.parametrize(
    'name,statuses',
    [
        (
            'A1',
            {
                'okubo': 'skipped',
                'hwv_regular': 'skipped',
                'idempotent_spectrum': 'skipped',
                'sl3_model': 'skipped',
                'power_associativity': 'pass',
            },
        ),
        (
            'A2',
            {
                'okubo': 'pass',
                'hwv_regular': 'skipped',
                'idempotent_spectrum': 'skipped',
                'sl3_model': 'pass',
                'v_product': 'pass',
            },
        ),
        (
            'B2',
            {
                'okubo': 'skipped',
                'hwv_regular': 'pass',
                'idempotent_spectrum': 'pass',
                'sl3_model': 'skipped',
            },
        ),
    ],
)
def test_suite(name: str, statuses: dict):
    """Testing a full suite run on the small types.

    Setup and Test
    * build the algebra table.
    * run every registered check with the default control.
    * validate no check failed, the registration order and selected statuses.

    Args:
        name (str): The Lie type.
        statuses (dict): Expected statuses of selected checks.
    """
    report = VerificationSuite(algebra_table(name), verify_control={'samples': 5}).run()
    by_name = {check.name: check for check in report.checks}
    assert not report.failed, f'failed: {[c.to_dict() for c in report.checks if c.failed]}'
    assert [check.name for check in report.checks] == CHECK_NAMES, f'order: {list(by_name)}'
    for check, status in statuses.items():
        assert by_name[check].status == status, f'{check}: {by_name[check].to_dict()}'
    assert sum(report.summary.values()) == len(CHECK_NAMES), f'summary: {report.summary}'


@pytest.mark.slow
def test_suite_g2():
    """Testing a full suite run on G2."""
    report = VerificationSuite(algebra_table('G2')).run()
    assert not report.failed, f'failed: {[c.to_dict() for c in report.checks if c.failed]}'


def test_suite_with_representation(table_a2: AlgebraTable, lie_a2: LieAlgebra):
    """Testing the representation checks on the natural sl3 module.

    Args:
        table_a2 (fixture): The A(sl3) table.
        lie_a2 (fixture): The sl3 Lie algebra.
    """
    rep = natural_rep_sl3(lie_a2)
    suite = VerificationSuite(table_a2, rep=rep, verify_control={'samples': 3, 'seed': 7})
    assert suite.seed == 7 and suite.samples == 3 and suite.exhaustive
    assert [name for name, _ in suite.checks][-1] == 'pi_proj'
    report = suite.run()
    by_name = {check.name: check for check in report.checks}
    assert not report.failed, f'report: {report.to_json()}'
    assert by_name['pi_proj'].status == 'skipped', f'{by_name["pi_proj"].to_dict()}'
    assert by_name['pi_proj'].detail['reason'] == 'A2 excluded'
    assert by_name['casimir'].detail['mu'] == '4/9', f'{by_name["casimir"].to_dict()}'


def test_report_formats(table_a1: AlgebraTable):
    """Testing the JSON and text report.

    Args:
        table_a1 (fixture): The A(sl2) table.
    """
    report = VerificationSuite(table_a1, verify_control={'seed': 3}).run()
    data = json.loads(report.to_json())
    assert data['type'] == 'A1' and data['seed'] == 3, f'data: {data}'
    assert data['summary']['fail'] == 0, f'summary: {data["summary"]}'
    text = report.to_text()
    assert text.startswith('A(A1) verification, seed 3'), f'text: {text}'
    assert text.splitlines()[-1].startswith('summary: '), f'text: {text}'


def test_failures_are_reported(table_a2: AlgebraTable):
    """Testing corrupted tables fail with exact witnesses.

    Args:
        table_a2 (fixture): The A(sl3) table.
    """
    broken_products = dict(table_a2.prod_const)
    broken_products[(0, 0)] = {0: QQ(123)}
    broken = dataclasses.replace(table_a2, prod_const=broken_products)
    result = check_unit(broken)
    assert result.failed, f'result: {result.to_dict()}'
    assert result.witness is not None, 'missing witness'

    gram = [list(row) for row in table_a2.tau_gram]
    gram[0][1] += 1
    broken = dataclasses.replace(table_a2, tau_gram=tuple(tuple(row) for row in gram))
    result = check_tau_assoc(broken)
    assert result.failed and result.witness == {'asymmetric': [0, 1]}, f'{result.to_dict()}'

    report = VerificationReport('A2', 0, [result])
    assert report.failed and report.summary['fail'] == 1


def test_g2_checks(table_g2: AlgebraTable, lie_g2: LieAlgebra):
    """Testing the non-Jordan checks on G2.

    Args:
        table_g2 (fixture): The A(G2) table.
        lie_g2 (fixture): The G2 Lie algebra.
    """
    result = check_power_associativity(table_g2)
    assert result.status == 'pass' and result.witness, f'{result.to_dict()}'

    result = check_idempotent_spectrum(table_g2, count=10)
    assert result.status == 'pass', f'{result.to_dict()}'
    assert result.detail['gamma'] == [1, 0], f'{result.detail}'

    result = check_v_product(table_g2)
    assert result.status == 'pass', f'{result.to_dict()}'
    assert result.detail["tau(e,e')"] == '5/7', f'{result.detail}'

    result = check_okubo(lie_g2, samples=3)
    assert result.status == 'pass', f'{result.to_dict()}'
    assert result.detail['alpha_ad']['G2'] == '5/32', f'{result.detail}'

    for alpha, beta, got, expected in paired_root_values(table_g2):
        assert got == expected, f'tau at {alpha}, {beta}: {got} != {expected}'

    assert check_sl3_model(table_g2).status == 'skipped'


def test_peirce_values(table_g2: AlgebraTable):
    """Testing lambda_H leaves the Jordan Peirce values {0, 1/2, 1}.

    Args:
        table_g2 (fixture): The A(G2) table.
    """
    data = peirce_data(table_g2, 10, seed=0)
    assert data['failure'] is None, f'failure: {data["failure"]}'
    assert len(data['samples']) == 10, f'samples: {data["samples"]}'
    lambdas = set(data['lambdas'])
    assert len(lambdas) >= 3, f'lambdas: {lambdas}'
    assert lambdas - {QQ(0), QQ(1, 2), QQ(1)}, f'lambdas: {lambdas}'
    assert 'eigenvalues' in data['samples'][0], 'missing eigenvalues'


@pytest.mark.parametrize(
    'name,expected',
    [('A1', []), ('A2', []), ('B2', [[0]]), ('G2', [[0]]), ('D4', [[0], [2], [3]])],
)
def test_regular_components(name: str, expected: list):
    """Testing the simple roots orthogonal to the highest root.

    Args:
        name (str): The Lie type.
        expected (list): The expected connected components.
    """
    components = regular_components(lie_algebra(name))
    assert sorted(components) == expected, f'components: {components}'


def test_casimir_with_representation(lie_a2: LieAlgebra):
    """Testing sum rho(X_i) rho(Y_i) = mu Id.

    Args:
        lie_a2 (fixture): The sl3 Lie algebra.
    """
    result = check_casimir(lie_a2, natural_rep_sl3(lie_a2))
    assert result.status == 'pass', f'{result.to_dict()}'


@pytest.mark.parametrize(
    'control,expected',
    [
        ({'trials': 7, 'exhaustive_threshold': 4}, 7),
        ({'trials': 3}, 3),
        ({'exhaustive_threshold': 4}, 1),
        ({}, 20),
    ],
)
def test_simplicity_trials(table_a2: AlgebraTable, control: dict, expected: int):
    """Testing that a requested trial count is used as given.

    Setup and Test
    * build a suite on A(sl3) with the control values.
    * validate the resolved trial count and the count the simplicity check ran.

    Args:
        table_a2 (fixture): The A(sl3) table.
        control (dict): The verify control values.
        expected (int): The expected trial count.
    """
    suite = VerificationSuite(table_a2, verify_control=control)
    assert suite.trials == expected, f'trials: {suite.trials}'
    result = dict(suite.checks)['simplicity']()
    assert result.detail['trials'] == expected, f'detail: {result.detail}'
    assert not result.failed, f'result: {result.to_dict()}'


def test_power_associativity_commutator(table_a2: AlgebraTable):
    """Testing the Jordan type check also runs the multiplication commutator.

    Args:
        table_a2 (fixture): The A(sl3) table.
    """
    result = check_power_associativity(table_a2, samples=5, commutator_samples=2)
    assert not result.failed, f'result: {result.to_dict()}'
    assert result.detail['commutator_samples'] == 2, f'detail: {result.detail}'
    result = check_power_associativity(table_a2, samples=3)
    assert result.detail['commutator_samples'] == 3, f'detail: {result.detail}'
