"""Verification suite for a built A(g) table."""
# standard library
import itertools
import json
import logging
import math
import time
from dataclasses import dataclass, field

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from tqdm import tqdm

# first-party
from chevalley_algebra.algcore import (
    AlgebraTable,
    adjoint_action,
    coordinates,
    counit,
    counit_split,
    e_s,
    jordan_product_cartan,
    pair_key,
    s_map,
    s_operator,
    sym_product,
    tau,
)
from chevalley_algebra.chevalley import LieAlgebra, casimir_operator, orthogonal_cartan_basis
from chevalley_algebra.construction2 import (
    SIGMA_DIMENSIONS,
    Representation,
    Sl3ModelAlgebra,
    adjoint_rep,
    check_pi_proj,
    is_zero,
    mixed_trace_residual,
    natural_rep_sl3,
    okubo_alpha,
    quartic_trace_residual,
    sigma_coords,
    sigma_equivariance_residual,
    sigma_kernel_residuals,
    sigma_rank,
    sigma_table_comparison,
)
from chevalley_algebra.exactla import (
    EchelonBasis,
    axpy,
    independent_subset,
    rank,
    rational_eigenvalues,
    to_matrix,
)
from chevalley_algebra.rootsys import (
    DUAL_COXETER_TABLE,
    build_root_system,
    classical_dimension,
    parse_type,
    predicted_dimension,
    table_row,
)
from chevalley_algebra.unitize import (
    TableAlgebra,
    associativity_defect_pairs,
    find_pa1_witness,
    random_element,
    scale,
    subtract,
    unitize,
)
from chevalley_algebra.utils import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SKIPPED,
    CheckResult,
    control_dict,
    format_element,
    format_rational,
    seeded_rng,
)

logger = logging.getLogger(__name__)

# types whose algebra is a Jordan algebra (power-associative)
JORDAN_TYPES = ('A1', 'A2')

# the Peirce values of a Jordan algebra
JORDAN_PEIRCE = (QQ.zero, QQ(1, 2), QQ.one)


def _root_pair_text(alpha, beta) -> list[list[int]]:
    return [list(alpha), list(beta)]


def check_dimension(t: AlgebraTable) -> CheckResult:
    """Compare dim A with 1 + dim L(lambda) and binom(dim G + 1, 2) - weyl_dim(2 theta)."""
    result = CheckResult('dimension')
    d = t.lie.datum
    formula = classical_dimension(d)
    predicted = predicted_dimension(d)
    result.detail.update(dimA=t.dim_a, formula=formula, predicted=predicted)
    if t.dim_a != formula or t.dim_a != predicted:
        return result.fail({'dimA': t.dim_a, 'formula': formula, 'predicted': predicted})
    return result


def check_unit(t: AlgebraTable) -> CheckResult:
    """Check e a = a for every basis element, epsilon(e) = 1 and S(e_S) = (hv + 1) Id."""
    result = CheckResult('unit')
    L = t.lie
    for a in range(t.dim_a):
        product = t.multiply(t.unit_coords, {a: QQ.one})
        if product != {a: QQ.one}:
            return result.fail({'basis': a, 'product': format_element(product)})
    value = counit(t, t.unit_coords)
    if value != 1:
        return result.fail({'epsilon(e)': format_rational(value)})
    if not s_operator(L, e_s(L)).equals_scalar(L.h_check + 1):
        return result.fail({'S(e_S)': f'not {L.h_check + 1} Id'})
    result.detail['basis'] = t.dim_a
    return result


def check_casimir(L: LieAlgebra, rep: Representation | None = None) -> CheckResult:
    """Check sum_i ad(X_i) ad(Y_i) = Id and, for a representation, sum_i rho(X_i) rho(Y_i) = mu Id.

    Args:
        L: The Lie algebra.
        rep: An optional representation.

    Returns:
        CheckResult: fail carries the first offending matrix entry.
    """
    result = CheckResult('casimir')
    residual = dict(casimir_operator(L))
    axpy(residual, {(l, l): QQ.one for l in range(L.dim)}, -1)
    if residual:
        (row, col), value = min(residual.items())
        return result.fail({'entry': [row, col], 'residual': format_rational(value)})
    if rep is not None:
        total = rep.rho({})
        for i in range(L.dim):
            total = total + rep.matrices[i] * rep.rho(L.dual[i])
        if not is_zero(total - DomainMatrix.eye(rep.dim_v, QQ).to_dense() * rep.mu):
            return result.fail({'representation': f'Casimir is not {format_rational(rep.mu)} Id'})
        result.detail['mu'] = format_rational(rep.mu)
    return result


def check_trace_identity(t: AlgebraTable, rep: Representation | None = None) -> CheckResult:
    """Check Tr(S(X_i X_j)) = (hv + 1) K(X_i, X_j) on all basis pairs of g."""
    result = CheckResult('trace_identity')
    L = t.lie
    h1 = L.h_check + 1
    for i in range(L.dim):
        for j in range(i, L.dim):
            value = s_map(L, i, j).trace()
            if value != h1 * L.killing[i][j]:
                return result.fail(
                    {'pair': [L.labels[i], L.labels[j]], 'trace': format_rational(value)}
                )
    result.detail['pairs'] = L.dim * (L.dim + 1) // 2
    if rep is not None:
        result.detail['rep_trace_scale'] = format_rational(rep.trace_scale)
    return result


def _tau_rows(t: AlgebraTable, a: int, b: int) -> list:
    """Return c -> tau(b_a b_b, b_c)."""
    product = t.prod_const.get(pair_key(a, b), {})
    return [
        sum((v * t.tau_gram[k][c] for k, v in product.items()), QQ.zero) for c in range(t.dim_a)
    ]


def check_tau_assoc(
    t: AlgebraTable, exhaustive: bool = True, samples: int = 20, seed: int = 0
) -> CheckResult:
    """Check tau(a b, c) = tau(a, b c) and the symmetry of tau on basis triples.

    Args:
        t: The algebra table.
        exhaustive: Check all basis triples instead of seeded samples.
        samples: The number of sampled triples.
        seed: The random seed.

    Returns:
        CheckResult: fail carries the offending triple.
    """
    result = CheckResult('tau_assoc')
    n = t.dim_a
    for a in range(n):
        for b in range(a + 1, n):
            if t.tau_gram[a][b] != t.tau_gram[b][a]:
                return result.fail({'asymmetric': [a, b]})

    rows: dict[tuple[int, int], list] = {}

    def row(a: int, b: int) -> list:
        key = pair_key(a, b)
        if key not in rows:
            rows[key] = _tau_rows(t, *key)
        return rows[key]

    if exhaustive:
        triples = itertools.product(range(n), repeat=3)
        count = n**3
    else:
        rng = seeded_rng(seed, 'tau-assoc')
        triples = [tuple(rng.randrange(n) for _ in range(3)) for _ in range(samples)]
        count = samples
    for a, b, c in triples:
        if row(a, b)[c] != row(b, c)[a]:
            return result.fail(
                {
                    'triple': [a, b, c],
                    'tau(ab,c)': format_rational(row(a, b)[c]),
                    'tau(a,bc)': format_rational(row(b, c)[a]),
                }
            )
    result.detail.update(mode='exhaustive' if exhaustive else 'sampled', triples=count)
    return result


def paired_root_values(t: AlgebraTable, limit: int = 20) -> list[tuple]:
    """Return (alpha, beta, tau value, expected) for orthogonal roots with alpha + beta not a root.

    The expected value is (hv + 1) / dim G * 2 hv^2 nu_alpha nu_beta for
    tau(S(X_alpha X_beta), S(X_-alpha X_-beta)).
    """
    L = t.lie
    d = L.datum
    r = QQ(L.h_check + 1, L.dim)
    out = []
    for alpha, beta in itertools.combinations(d.roots, 2):
        if d.inner(alpha, beta) != 0 or d.is_root(tuple(x + y for x, y in zip(alpha, beta))):
            continue
        minus_alpha, minus_beta = tuple(-x for x in alpha), tuple(-x for x in beta)
        upper = coordinates(t, {pair_key(L.root_index[alpha], L.root_index[beta]): QQ.one})
        lower = coordinates(
            t, {pair_key(L.root_index[minus_alpha], L.root_index[minus_beta]): QQ.one}
        )
        expected = r * 2 * L.h_check**2 * d.nu[alpha] * d.nu[beta]
        out.append((alpha, beta, tau(t, upper, lower), expected))
        if len(out) >= limit:
            break
    return out


def check_tau_nondeg(t: AlgebraTable, samples: int = 20) -> CheckResult:
    """Check that the tau Gram matrix has full rank, and the paired-root values of tau."""
    result = CheckResult('tau_nondeg')
    value = rank(to_matrix(t.tau_gram, t.dim_a))
    result.detail['rank'] = value
    if value != t.dim_a:
        return result.fail({'rank': value, 'dimA': t.dim_a})
    pairs = paired_root_values(t, limit=samples)
    for alpha, beta, got, expected in pairs:
        if got != expected:
            return result.fail(
                {
                    'roots': _root_pair_text(alpha, beta),
                    'tau': format_rational(got),
                    'expected': format_rational(expected),
                }
            )
    result.detail['paired_roots'] = len(pairs)
    return result


def high_weight_table(L: LieAlgebra) -> list[tuple]:
    """Return (alpha, beta, <alpha, beta>, S(X_alpha X_beta) != 0, expected) per root pair.

    Unordered pairs with alpha + beta neither zero nor a root are listed. S(X_alpha X_beta) is
    expected nonzero when the roots are orthogonal, and for <alpha, beta> > 0 exactly when both
    roots are short.
    """
    d = L.datum
    rows = []
    for index, alpha in enumerate(d.roots):
        for beta in d.roots[index:]:
            gamma = tuple(x + y for x, y in zip(alpha, beta))
            if not any(gamma) or d.is_root(gamma):
                continue
            product = d.inner(alpha, beta)
            nonzero = not s_map(L, L.root_index[alpha], L.root_index[beta]).is_zero()
            if product == 0:
                expected = True
            else:
                expected = not d.is_long(alpha) and not d.is_long(beta)
            rows.append((alpha, beta, product, nonzero, expected))
    return rows


def check_high_wt(L: LieAlgebra) -> CheckResult:
    """Check the zero pattern of S(X_alpha X_beta) for alpha + beta not a root."""
    result = CheckResult('high_wt')
    rows = high_weight_table(L)
    for alpha, beta, product, nonzero, expected in rows:
        if nonzero != expected:
            return result.fail(
                {
                    'roots': _root_pair_text(alpha, beta),
                    'inner': format_rational(product),
                    'nonzero': nonzero,
                }
            )
    result.detail.update(pairs=len(rows), nonzero=sum(1 for row in rows if row[3]))
    return result


def check_okubo(
    L: LieAlgebra, samples: int = 20, seed: int = 0, rep: Representation | None = None
) -> CheckResult:
    """Check the quartic trace identities for the tabulated types.

    4 alpha_Ad hv^2 = hv + 6 is checked for every tabulated type. On seeded random X (and pairs
    X, Y outside A2) the adjoint quartic identities are checked exactly, and the same for a
    supplied representation.

    Args:
        L: The Lie algebra.
        samples: The number of random elements.
        seed: The random seed.
        rep: An optional representation.

    Returns:
        CheckResult: skipped for types outside the table.
    """
    result = CheckResult('okubo')
    if table_row(L.name) is None:
        return result.skip(f'{L.name} is not a tabulated type')

    numerology = {}
    for name, h_check, *_ in DUAL_COXETER_TABLE:
        dim_g = build_root_system(parse_type(name)).dim
        alpha = okubo_alpha(1, dim_g, dim_g)
        numerology[name] = format_rational(alpha)
        if 4 * alpha * h_check**2 != h_check + 6:
            return result.fail({'type': name, 'alpha': format_rational(alpha)})
    result.detail['alpha_ad'] = numerology

    rng = seeded_rng(seed, 'okubo')
    reps = [('adjoint', adjoint_rep(L))]
    if rep is not None:
        reps.append((f'dim {rep.dim_v}', rep))
    for label, current in reps:
        for _ in range(samples):
            x = random_element(rng, L.dim)
            value = quartic_trace_residual(current, x)
            if value != 0:
                return result.fail(
                    {'rep': label, 'x': format_element(x), 'residual': format_rational(value)}
                )
            if L.name == 'A2':
                continue
            y = random_element(rng, L.dim)
            value = mixed_trace_residual(current, x, y)
            if value != 0:
                return result.fail(
                    {
                        'rep': label,
                        'x': format_element(x),
                        'y': format_element(y),
                        'residual': format_rational(value),
                    }
                )
    result.detail['samples'] = samples
    return result


def check_jordan_subalgebra(t: AlgebraTable) -> CheckResult:
    """Check that P(xy) -> S(xy) on Sym^2 h is an injective Jordan homomorphism.

    A K-orthogonal Cartan basis u_1..u_l is used; products of all pairs of monomials are compared
    with the Jordan product expansion, and the image must have dimension binom(l + 1, 2).
    """
    result = CheckResult('jordan_subalgebra')
    L = t.lie
    basis = orthogonal_cartan_basis(L)
    pairs = list(itertools.combinations_with_replacement(range(len(basis)), 2))
    images = {p: coordinates(t, sym_product(basis[p[0]], basis[p[1]])) for p in pairs}
    image_dim = len(independent_subset([images[p] for p in pairs]))
    expected_dim = math.comb(L.rank + 1, 2)
    result.detail.update(image_dim=image_dim, expected=expected_dim)
    if image_dim != expected_dim:
        return result.fail({'image_dim': image_dim})
    for p, q in itertools.combinations_with_replacement(pairs, 2):
        jordan = jordan_product_cartan(
            L, basis[p[0]], basis[p[1]], basis[q[0]], basis[q[1]]
        )
        lhs = coordinates(t, jordan)
        rhs = t.multiply(images[p], images[q])
        if lhs != rhs:
            return result.fail(
                {'monomials': [list(p), list(q)], 'difference': format_element(subtract(lhs, rhs))}
            )
    return result


def check_v_product(t: AlgebraTable) -> CheckResult:
    """Check the product on V = ker epsilon and the Cartan Jordan unit e'.

    The product on V vanishes exactly for the Jordan types. For rank at least 2,
    e' = sum S(u_i^2) / K(u_i, u_i) has tau(e, e') = l (hv + 1) / dim G and
    (e' - s e) S(u_1 u_2) = (1 - s) S(u_1 u_2).
    """
    result = CheckResult('v_product')
    L = t.lie
    split = counit_split(t)
    nonzero = bool(split.algebra.dot)
    result.detail['nonzero'] = nonzero
    if nonzero == (L.name in JORDAN_TYPES):
        return result.fail({'type': L.name, 'nonzero': nonzero})
    if L.rank < 2:
        return result

    basis = orthogonal_cartan_basis(L)
    e_prime: dict = {}
    for u in basis:
        axpy(e_prime, coordinates(t, sym_product(u, u)), 1 / L.killing_form(u, u))
    s = tau(t, t.unit_coords, e_prime)
    expected = QQ(L.rank * (L.h_check + 1), L.dim)
    result.detail["tau(e,e')"] = format_rational(s)
    if s != expected:
        return result.fail(
            {"tau(e,e')": format_rational(s), 'expected': format_rational(expected)}
        )
    v = subtract(e_prime, scale(t.unit_coords, s))
    w = coordinates(t, sym_product(basis[0], basis[1]))
    product = t.multiply(v, w)
    if product != scale(w, 1 - s):
        return result.fail({'product': format_element(product)})
    if L.rank >= 3:
        lhs = t.multiply(w, coordinates(t, sym_product(basis[0], basis[2])))
        quarter_norm = QQ(1, 4) * L.killing_form(basis[0], basis[0])
        rhs = coordinates(t, sym_product(basis[1], basis[2], quarter_norm))
        if lhs != rhs:
            return result.fail({'difference': format_element(subtract(lhs, rhs))})
    return result


def regular_components(L: LieAlgebra) -> list[list[int]]:
    """Return the connected components of the simple roots orthogonal to theta."""
    d = L.datum
    nodes = [i for i, alpha in enumerate(d.simple_roots) if d.inner(alpha, d.theta) == 0]
    components: list[list[int]] = []
    seen: set[int] = set()
    for start in nodes:
        if start in seen:
            continue
        component, stack = [], [start]
        seen.add(start)
        while stack:
            i = stack.pop()
            component.append(i)
            for j in nodes:
                if j not in seen and d.cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        components.append(sorted(component))
    return components


def component_highest_root(L: LieAlgebra, component: list[int]):
    """Return the highest positive root supported on a set of simple roots."""
    d = L.datum
    support = [
        r for r in d.positive_roots if all(c == 0 or i in component for i, c in enumerate(r))
    ]
    return max(support, key=lambda r: (d.height(r), r))


def check_hwv_regular(L: LieAlgebra) -> CheckResult:
    """Check that S(X_theta X_beta) is a nonzero highest weight vector per regular component."""
    result = CheckResult('hwv_regular')
    components = regular_components(L)
    if not components:
        return result.skip(f'no simple root of {L.name} is orthogonal to the highest root')
    d = L.datum
    theta = L.root_index[d.theta]
    weights = []
    for component in components:
        beta = component_highest_root(L, component)
        w = {pair_key(theta, L.root_index[beta]): QQ.one}
        if s_operator(L, w).is_zero():
            return result.fail({'component': component, 'beta': list(beta), 'zero': True})
        for alpha in d.positive_roots:
            raised = adjoint_action(L, {L.root_index[alpha]: QQ.one}, w)
            if not s_operator(L, raised).is_zero():
                return result.fail(
                    {'component': component, 'beta': list(beta), 'raised_by': list(alpha)}
                )
        weights.append([a + b for a, b in zip(d.theta, beta)])
    result.detail.update(components=len(components), weights=weights)
    return result


def peirce_data(t: AlgebraTable, count: int, seed: int = 0, eigen_threshold: int = 64) -> dict:
    """Return the Cartan idempotent family data used by the spectrum check and the CLI.

    For seeded Cartan H with K(H,H) != 0, u_H = S(H^2) / K(H,H) is checked idempotent and
    u_H S(X_theta X_gamma) = lambda_H S(X_theta X_gamma) with
    lambda_H = hv ((theta + gamma)(H))^2 / (2 K(H,H)).

    Args:
        t: The algebra table.
        count: The number of Cartan directions.
        seed: The random seed.
        eigen_threshold: The largest dim A for which rational eigenvalues are computed.

    Returns:
        dict: gamma, samples (one dict per H) and the failure record, if any.
    """
    L = t.lie
    d = L.datum
    gamma = next((r for r in d.positive_roots if d.inner(r, d.theta) == 0), None)
    data: dict = {
        'gamma': None if gamma is None else list(gamma),
        'samples': [],
        'lambdas': [],
        'failure': None,
    }
    if gamma is None or count <= 0:
        return data
    weight = tuple(a + b for a, b in zip(d.theta, gamma))
    target = coordinates(t, {pair_key(L.root_index[d.theta], L.root_index[gamma]): QQ.one})
    rng = seeded_rng(seed, 'peirce')
    while len(data['samples']) < count:
        coeffs = [rng.randint(-4, 4) for _ in range(L.rank)]
        h = L.cartan_element(coeffs)
        norm = L.killing_form(h, h)
        if norm == 0:
            continue
        u = scale(coordinates(t, sym_product(h, h)), 1 / norm)
        value = sum(c * d.simple_pairing(weight, i) for i, c in enumerate(coeffs))
        lam = L.h_check * QQ(value) ** 2 / (2 * norm)
        sample = {'h': coeffs, 'lambda': format_rational(lam)}
        if t.multiply(u, u) != u:
            data['failure'] = {'h': coeffs, 'idempotent': False}
            return data
        if t.multiply(u, target) != scale(target, lam):
            data['failure'] = {'h': coeffs, 'lambda': format_rational(lam)}
            return data
        if t.dim_a <= eigen_threshold:
            roots, others = rational_eigenvalues(t.left_multiplication(u))
            sample['eigenvalues'] = {format_rational(k): m for k, m in sorted(roots.items())}
            sample['irrational_factors'] = len(others)
        data['samples'].append(sample)
        data['lambdas'].append(lam)
    return data


def check_idempotent_spectrum(
    t: AlgebraTable, count: int = 10, seed: int = 0, eigen_threshold: int = 64
) -> CheckResult:
    """Check the Cartan idempotents and that some lambda_H lies outside {0, 1/2, 1}."""
    result = CheckResult('idempotent_spectrum')
    if t.lie.name in JORDAN_TYPES:
        return result.skip(f'{t.lie.name} is a Jordan type')
    data = peirce_data(t, count, seed=seed, eigen_threshold=eigen_threshold)
    if data['gamma'] is None:
        return result.skip('no positive root orthogonal to the highest root')
    if data['failure'] is not None:
        return result.fail(data['failure'])
    lambdas = sorted(set(data['lambdas']))
    result.detail.update(gamma=data['gamma'], lambdas=[format_rational(v) for v in lambdas])
    if data['samples'] and all(v in JORDAN_PEIRCE for v in lambdas):
        return result.fail({'lambdas': [format_rational(v) for v in lambdas]})
    return result


def ideal_closure_dimension(t: AlgebraTable, v: dict) -> int:
    """Return the dimension of the ideal generated by v."""
    span = EchelonBasis()
    span.add(v)
    queue = [v]
    while queue and len(span) < t.dim_a:
        x = queue.pop()
        for a in range(t.dim_a):
            y = t.multiply(x, {a: QQ.one})
            if span.add(y):
                queue.append(y)
                if len(span) == t.dim_a:
                    break
    return len(span)


def check_simplicity(t: AlgebraTable, trials: int = 20, seed: int = 0) -> CheckResult:
    """Sample simplicity: every seeded nonzero element must generate all of A.

    This certifies that the tested elements generate A; it is not a proof of simplicity.
    """
    result = CheckResult('simplicity')
    rng = seeded_rng(seed, 'simplicity')
    full = 0
    for trial in range(trials):
        v = {}
        while not v:
            v = random_element(rng, t.dim_a)
        size = ideal_closure_dimension(t, v)
        if size == t.dim_a:
            full += 1
        elif result.witness is None:
            result.witness = {'trial': trial, 'element': format_element(v), 'dim': size}
    summary = f'generated ideal full for {full}/{trials} trials'
    result.detail.update(full=full, trials=trials, summary=summary)
    if full != trials:
        result.status = FAIL
    return result


def check_power_associativity(
    t: AlgebraTable, samples: int = 1000, seed: int = 0, commutator_samples: int = 20
) -> CheckResult:
    """Check degree-4 power associativity: zero residuals for Jordan types, a witness otherwise.

    For Jordan types the first `commutator_samples` elements x also need [M_x, M_{x^2}] = 0.
    """
    result = CheckResult('power_associativity')
    if t.lie.name in JORDAN_TYPES:
        rng = seeded_rng(seed, 'power-associativity')
        for index in range(samples):
            x = random_element(rng, t.dim_a)
            residual = t.pa1_residual(x)
            if residual:
                return result.fail({'element': format_element(x), 'pa1': format_element(residual)})
            y = random_element(rng, t.dim_a)
            residual = t.jordan_residual(x, y)
            if residual:
                return result.fail(
                    {
                        'x': format_element(x),
                        'y': format_element(y),
                        'jordan': format_element(residual),
                    }
                )
            if index < commutator_samples and not is_zero(t.jordan_commutator(x)):
                return result.fail({'x': format_element(x), 'jordan_commutator': 'nonzero'})
        result.detail['samples'] = samples
        result.detail['commutator_samples'] = min(samples, commutator_samples)
        return result
    witness = find_pa1_witness(t, seed=seed)
    if witness is None:
        result.status = INCONCLUSIVE
        result.detail['reason'] = 'no rational witness found'
        return result
    result.witness = {
        'element': format_element(witness),
        'pa1': format_element(t.pa1_residual(witness)),
    }
    return result


def check_unitize_round_trip(
    t: AlgebraTable, exhaustive: bool = True, samples: int = 20, seed: int = 0
) -> CheckResult:
    """Check that splitting off the counit and unitizing again reproduces the structure constants.

    The tau and f associativity defects are also compared on seeded triples.
    """
    result = CheckResult('unitize_round_trip')
    split = counit_split(t)
    rebuilt: TableAlgebra = unitize(split.algebra)
    n = t.dim_a
    rng = seeded_rng(seed, 'unitize-round-trip')
    if exhaustive:
        pairs = list(itertools.combinations_with_replacement(range(n), 2))
    else:
        pairs = [tuple(sorted((rng.randrange(n), rng.randrange(n)))) for _ in range(samples)]
    for a, b in pairs:
        product = rebuilt.multiply(
            split.from_table({a: QQ.one}), split.from_table({b: QQ.one})
        )
        got = split.to_table(product)
        expected = t.prod_const.get((a, b), {})
        if got != expected:
            return result.fail({'pair': [a, b], 'product': format_element(got)})

    triples = [
        tuple(random_element(rng, split.algebra.dim) for _ in range(3)) for _ in range(samples)
    ]
    defects = associativity_defect_pairs(split.algebra, triples)
    for index, (tau_defect, f_defect) in enumerate(defects):
        if tau_defect != f_defect:
            return result.fail(
                {
                    'triple': index,
                    'tau_defect': format_rational(tau_defect),
                    'f_defect': format_rational(f_defect),
                }
            )
    result.detail.update(pairs=len(pairs), triples=len(triples))
    return result


def check_sl3_model(
    t: AlgebraTable, rep: Representation | None = None, samples: int = 20, seed: int = 0
) -> CheckResult:
    """Compare A(sl3) with the matrix model transported through sigma.

    Also checks that sigma is bijective, equivariant, annihilates ker S and maps e to the
    identity, and that the model product satisfies the Jordan identity on samples.
    """
    result = CheckResult('sl3_model')
    L = t.lie
    if L.name != 'A2':
        return result.skip('A2 only')
    rep = rep or natural_rep_sl3(L)
    mismatches = sigma_table_comparison(t, rep)
    if mismatches:
        return result.fail(mismatches[0], mismatches=len(mismatches))
    image_rank = sigma_rank(rep, t)
    if image_rank != t.dim_a:
        return result.fail({'sigma_rank': image_rank})
    if sigma_kernel_residuals(rep, t):
        return result.fail({'kernel': 'sigma does not vanish on ker S'})
    unit = sigma_coords(rep, t, t.unit_coords)
    if not is_zero(unit - Sl3ModelAlgebra.to_matrix({0: QQ.one, 4: QQ.one, 8: QQ.one})):
        return result.fail({'unit': 'sigma(e) is not the identity'})
    for z in range(L.dim):
        for a, pair in enumerate(t.basis_pairs):
            if not is_zero(sigma_equivariance_residual(rep, {z: QQ.one}, {pair: QQ.one})):
                return result.fail({'equivariance': [L.labels[z], a]})

    model = Sl3ModelAlgebra()
    rng = seeded_rng(seed, 'sl3-model')
    for _ in range(samples):
        x, y = random_element(rng, 9), random_element(rng, 9)
        if model.multiply(x, y) != model.multiply(y, x) or model.jordan_residual(x, y):
            return result.fail({'x': format_element(x), 'y': format_element(y)})
    result.detail.update(pairs=t.dim_a * (t.dim_a + 1) // 2, sigma_rank=image_rank)
    return result


@dataclass
class VerificationReport:
    """Results of a suite run in registration order.

    Args:
        type: The Lie type.
        seed: The seed all sampled checks derive from.
        checks: The check results.
    """

    type: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def summary(self) -> dict[str, int]:
        """Return the number of checks per status."""
        counts = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0, SKIPPED: 0}
        for check in self.checks:
            counts[check.status] += 1
        return counts

    @property
    def failed(self) -> bool:
        """Return True if any check failed."""
        return any(check.failed for check in self.checks)

    def to_dict(self) -> dict:
        """Return the JSON ready report."""
        return {
            'type': self.type,
            'seed': self.seed,
            'checks': [check.to_dict() for check in self.checks],
            'summary': self.summary,
        }

    def to_json(self) -> str:
        """Return the report as indented JSON."""
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        """Return a human readable summary."""
        lines = [f'A({self.type}) verification, seed {self.seed}']
        for check in self.checks:
            note = check.detail.get('summary') or check.detail.get('reason') or ''
            lines.append(
                f'  {check.name:<22} {check.status:<13} {check.seconds:8.3f}s  {note}'.rstrip()
            )
        counts = ', '.join(f'{count} {status}' for status, count in self.summary.items())
        lines.append(f'summary: {counts}')
        return '\n'.join(lines)


class VerificationSuite:
    """Runs every registered check over one algebra table.

    Args:
        table: The completed algebra table.
        rep: An optional representation for the construction checks.
        verify_control: Settings overriding the defaults.
    """

    def __init__(
        self,
        table: AlgebraTable,
        rep: Representation | None = None,
        verify_control: dict | None = None,
    ):
        """Initialize class properties

        verify_control::

        seed (int): The seed every sampled check derives its stream from.
        samples (int): The number of samples for sampled checks.
        trials (int): The number of simplicity trials; 20 for exhaustive tables, else 1.
        exhaustive (bool): Check all basis triples and pairs regardless of dim A.
        exhaustive_threshold (int): The largest dim A checked exhaustively by default.
        pa_samples (int): The number of power-associativity samples for Jordan types.
        peirce_count (int): The number of Cartan idempotents.
        eigen_threshold (int): The largest dim A whose multiplication operators are factored.
        """
        self._verify_control = control_dict(
            {
                'seed': 0,
                'samples': 20,
                'trials': None,
                'exhaustive': False,
                'exhaustive_threshold': 64,
                'pa_samples': 1000,
                'peirce_count': 10,
                'eigen_threshold': 64,
            },
            verify_control,
        )
        self.table = table
        self.rep = rep

    @property
    def seed(self) -> int:
        """Return the seed."""
        return int(self._verify_control.get('seed') or 0)

    @property
    def samples(self) -> int:
        """Return the sample count."""
        return int(self._verify_control.get('samples') or 20)

    @property
    def trials(self) -> int:
        """Return the simplicity trial count."""
        trials = self._verify_control.get('trials')
        if trials:
            return int(trials)
        return 20 if self.exhaustive else 1

    @property
    def exhaustive(self) -> bool:
        """Return True when exhaustive checks are in effect for this table."""
        threshold = int(self._verify_control.get('exhaustive_threshold') or 64)
        return bool(self._verify_control.get('exhaustive')) or self.table.dim_a <= threshold

    @property
    def pa_samples(self) -> int:
        """Return the power-associativity sample count."""
        return int(self._verify_control.get('pa_samples') or 1000)

    @property
    def peirce_count(self) -> int:
        """Return the number of Cartan idempotents."""
        return int(self._verify_control.get('peirce_count') or 10)

    @property
    def eigen_threshold(self) -> int:
        """Return the largest dim A whose operators are factored."""
        return int(self._verify_control.get('eigen_threshold') or 64)

    @property
    def checks(self) -> list[tuple]:
        """Return (name, callable) in registration order."""
        t, L = self.table, self.table.lie
        registered = [
            ('dimension', lambda: check_dimension(t)),
            ('unit', lambda: check_unit(t)),
            ('casimir', lambda: check_casimir(L, self.rep)),
            ('trace_identity', lambda: check_trace_identity(t, self.rep)),
            (
                'tau_assoc',
                lambda: check_tau_assoc(t, self.exhaustive, self.samples, self.seed),
            ),
            ('tau_nondeg', lambda: check_tau_nondeg(t, self.samples)),
            ('high_wt', lambda: check_high_wt(L)),
            ('okubo', lambda: check_okubo(L, self.samples, self.seed, self.rep)),
            ('jordan_subalgebra', lambda: check_jordan_subalgebra(t)),
            ('v_product', lambda: check_v_product(t)),
            ('hwv_regular', lambda: check_hwv_regular(L)),
            (
                'idempotent_spectrum',
                lambda: check_idempotent_spectrum(
                    t, self.peirce_count, self.seed, self.eigen_threshold
                ),
            ),
            ('simplicity', lambda: check_simplicity(t, self.trials, self.seed)),
            (
                'power_associativity',
                lambda: check_power_associativity(t, self.pa_samples, self.seed),
            ),
            (
                'unitize_round_trip',
                lambda: check_unitize_round_trip(t, self.exhaustive, self.samples, self.seed),
            ),
            ('sl3_model', lambda: check_sl3_model(t, self._sl3_rep, self.samples, self.seed)),
        ]
        if self.rep is not None:
            registered.append(('pi_proj', self._pi_proj))
        return registered

    @property
    def _sl3_rep(self) -> Representation | None:
        if self.rep is not None and self.rep.dim_v == 3:
            return self.rep
        return None

    def _pi_proj(self) -> CheckResult:
        expected = SIGMA_DIMENSIONS.get(self.rep.lie.name)
        if expected != self.rep.dim_v:
            return CheckResult('pi_proj').skip(
                f'no sigma for {self.rep.lie.name} with a {self.rep.dim_v}-dimensional module'
            )
        return check_pi_proj(self.rep, self.samples, self.seed)

    def run(self, progress: bool = False) -> VerificationReport:
        """Run all checks and return the report.

        Args:
            progress: Show a progress bar over checks.

        Returns:
            VerificationReport: One result per registered check.
        """
        report = VerificationReport(type=self.table.lie.name, seed=self.seed)
        for name, check in tqdm(self.checks, desc='verify', disable=not progress):
            start = time.perf_counter()
            result = check()
            result.name = name
            result.seconds = time.perf_counter() - start
            if result.status == INCONCLUSIVE:
                logger.warning(f'{name}: inconclusive {result.detail.get("reason", "")}')
            elif result.failed:
                logger.error(f'{name}: failed with witness {result.witness}')
            else:
                logger.info(f'{name}: {result.status} in {result.seconds:.3f}s')
            report.checks.append(result)
        return report
