"""Small representations, the embedding sigma of A(g) into End(V) and the A(sl3) model."""
# standard library
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# first-party
from chevalley_algebra.algcore import (
    AlgebraTable,
    SymElement,
    adjoint_action,
    kernel_elements,
    s_operator,
    sym_product,
    to_sym,
)
from chevalley_algebra.chevalley import LieAlgebra, SparseElement
from chevalley_algebra.exactla import entries, independent_subset, solve, to_matrix, trace
from chevalley_algebra.unitize import CommutativeAlgebraABC, Element, random_element
from chevalley_algebra.utils import (
    CheckResult,
    Rational,
    ValidationError,
    format_element,
    format_rational,
    parse_rational,
    seeded_rng,
)

logger = logging.getLogger(__name__)

# types and representation dimensions admitting the embedding sigma
SIGMA_DIMENSIONS = {'A2': 3, 'G2': 7, 'F4': 26, 'E6': 27, 'E7': 56}


def _zero(n: int) -> DomainMatrix:
    return DomainMatrix({}, (n, n), QQ)


def _eye(n: int) -> DomainMatrix:
    return DomainMatrix.eye(n, QQ)


def commutator(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Return ab - ba."""
    return a * b - b * a


def jordan(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Return (ab + ba) / 2."""
    return (a * b + b * a) * QQ(1, 2)


def trace_product(a: DomainMatrix, b: DomainMatrix) -> Rational:
    """Return Tr(ab) without forming the product."""
    rows_a, rows_b = entries(a), entries(b)
    total = QQ.zero
    for k, row in rows_a.items():
        for l, value in row.items():
            other = rows_b.get(l, {}).get(k)
            if other is not None:
                total += value * other
    return total


def is_zero(m: DomainMatrix) -> bool:
    """Return True for the zero matrix."""
    return not entries(m)


@dataclass(frozen=True)
class Representation:
    """A finite-dimensional representation of g given on the Chevalley basis.

    Args:
        lie: The Lie algebra.
        dim_v: The dimension of V.
        matrices: rho(X_i) for every basis element.
        mu: The Casimir eigenvalue, from Tr(rho(x) rho(y)) = mu dim V / dim G K(x, y).
    """

    lie: LieAlgebra = field(repr=False)
    dim_v: int
    matrices: tuple[DomainMatrix, ...] = field(repr=False)
    mu: Rational

    @property
    def trace_scale(self) -> Rational:
        """Return mu dim V / dim G."""
        return self.mu * self.dim_v / self.lie.dim

    def rho(self, u: SparseElement) -> DomainMatrix:
        """Return rho(u) for a sparse element of g."""
        out = _zero(self.dim_v)
        for i, c in u.items():
            out = out + self.matrices[i] * QQ(c)
        return out


def validate_matrices(L: LieAlgebra, matrices) -> Rational:
    """Check a candidate representation and return its Casimir eigenvalue.

    Args:
        L: The Lie algebra.
        matrices: One square matrix per basis element.

    Returns:
        Rational: mu with Tr(rho(x) rho(y)) = mu dim V / dim G K(x, y).

    Raises:
        ValidationError: On a wrong count, a commutator failure or a trace-form mismatch; the
            message names the offending pair.
    """
    if len(matrices) != L.dim:
        raise ValidationError(f'Expected {L.dim} matrices for {L.name}, got {len(matrices)}.')
    n = matrices[0].shape[0]
    if any(m.shape != (n, n) for m in matrices):
        raise ValidationError('Representation matrices must all be square of one size.')

    labels = L.labels
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            expected = _zero(n)
            for k, c in L.bracket_basis(i, j).items():
                expected = expected + matrices[k] * QQ(c)
            if not is_zero(commutator(matrices[i], matrices[j]) - expected):
                raise ValidationError(
                    f'Commutator check failed for ({labels[i]}, {labels[j]}).'
                )

    scale = None
    for i in range(L.dim):
        for j in range(i, L.dim):
            value = trace_product(matrices[i], matrices[j])
            k_ij = L.killing[i][j]
            if k_ij == 0:
                if value != 0:
                    raise ValidationError(
                        f'Trace form nonzero where K vanishes at ({labels[i]}, {labels[j]}).'
                    )
                continue
            if scale is None:
                scale = value / k_ij
            elif value != scale * k_ij:
                raise ValidationError(
                    f'Trace normalization check failed for ({labels[i]}, {labels[j]}).'
                )
    if not scale:
        raise ValidationError('Trace form of the representation is zero.')
    return scale * L.dim / n


def make_representation(L: LieAlgebra, matrices) -> Representation:
    """Return a validated representation from one matrix per basis element."""
    matrices = tuple(m.to_dense() for m in matrices)
    mu = validate_matrices(L, matrices)
    rep = Representation(lie=L, dim_v=matrices[0].shape[0], matrices=matrices, mu=mu)
    logger.info(f'{L.name} representation of dim {rep.dim_v}, mu {format_rational(mu)}')
    return rep


def rep_from_generators(
    L: LieAlgebra, positive: list[DomainMatrix], negative: list[DomainMatrix]
) -> Representation:
    """Extend matrices for X_{alpha_i} and X_{-alpha_i} to the whole Chevalley basis.

    H_i = [X_{alpha_i}, X_{-alpha_i}], and X_beta for a non-simple root is
    [X_{alpha_i}, X_{beta - alpha_i}] / N_{alpha_i, beta - alpha_i} (signs flipped for negative
    roots), following the root order.

    Args:
        L: The Lie algebra.
        positive: Matrices of X_{alpha_i}, i = 1..rank.
        negative: Matrices of X_{-alpha_i}.

    Returns:
        Representation: The validated representation.
    """
    d = L.datum
    if len(positive) != L.rank or len(negative) != L.rank:
        raise ValidationError(f'Expected {L.rank} positive and negative generator matrices.')
    matrices: dict[int, DomainMatrix] = {}
    for i, alpha in enumerate(d.simple_roots):
        neg = tuple(-c for c in alpha)
        matrices[L.root_index[alpha]] = positive[i].to_dense()
        matrices[L.root_index[neg]] = negative[i].to_dense()
        matrices[i] = commutator(matrices[L.root_index[alpha]], matrices[L.root_index[neg]])

    for sign in (1, -1):
        for beta in d.positive_roots:
            root = tuple(sign * c for c in beta)
            if L.root_index[root] in matrices:
                continue
            for alpha in d.simple_roots:
                simple = tuple(sign * c for c in alpha)
                rest = tuple(a - b for a, b in zip(root, simple))
                if rest in L.root_index and L.root_index[rest] in matrices:
                    n = L.structure_constant(simple, rest)
                    bracket = commutator(
                        matrices[L.root_index[simple]], matrices[L.root_index[rest]]
                    )
                    matrices[L.root_index[root]] = bracket * QQ(1, n)
                    break
    return make_representation(L, [matrices[i] for i in range(L.dim)])


def natural_rep_sl3(L: LieAlgebra) -> Representation:
    """Return the tautological 3-dimensional representation of sl3."""
    if L.name != 'A2':
        raise ValidationError(f'The natural 3-dimensional representation needs A2, got {L.name}.')

    def unit_matrix(r: int, c: int) -> DomainMatrix:
        return DomainMatrix({r: {c: QQ.one}}, (3, 3), QQ)

    positive = [unit_matrix(0, 1), unit_matrix(1, 2)]
    negative = [unit_matrix(1, 0), unit_matrix(2, 1)]
    return rep_from_generators(L, positive, negative)


def rep_to_dict(rep: Representation) -> dict:
    """Return the JSON representation format."""
    return {
        'type': rep.lie.name,
        'dimV': rep.dim_v,
        'matrices': [
            [format_rational(v) for row in m.to_list() for v in row] for m in rep.matrices
        ],
    }


def rep_from_dict(L: LieAlgebra, data: dict) -> Representation:
    """Return a validated representation from the JSON representation format."""
    try:
        rep_type, dim_v, flat = data['type'], int(data['dimV']), data['matrices']
    except (KeyError, TypeError, ValueError) as ex:
        raise ValidationError(f'Malformed representation document: {ex}.') from ex
    if rep_type != L.name:
        raise ValidationError(f'Representation is for {rep_type}, expected {L.name}.')
    matrices = []
    for index, values in enumerate(flat):
        if len(values) != dim_v * dim_v:
            raise ValidationError(f'Matrix {index} has {len(values)} entries, expected {dim_v}^2.')
        rows = [
            [parse_rational(str(v)) for v in values[r * dim_v : (r + 1) * dim_v]]
            for r in range(dim_v)
        ]
        matrices.append(to_matrix(rows, dim_v))
    return make_representation(L, matrices)


def save_rep(rep: Representation, path: str | Path):
    """Write the representation JSON (deterministic bytes)."""
    Path(path).write_text(json.dumps(rep_to_dict(rep), indent=2) + '\n', encoding='utf-8')


def load_rep(path: str | Path, L: LieAlgebra) -> Representation:
    """Read and validate a representation JSON file."""
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as ex:
        raise ValidationError(f'Cannot read representation file {path}: {ex}.') from ex
    return rep_from_dict(L, data)


def adjoint_rep(L: LieAlgebra) -> Representation:
    """Return the adjoint representation (mu = 1, trace form K).

    The matrices are not re-validated; the bracket table was certified when L was built.
    """
    matrices = tuple(L.ad_matrix({i: QQ.one}).to_dense() for i in range(L.dim))
    return Representation(lie=L, dim_v=L.dim, matrices=matrices, mu=QQ.one)


def okubo_alpha(mu, dim_v: int, dim_g: int) -> Rational:
    """Return (6 mu - 1) mu dim V / (2 (2 + dim G) dim G)."""
    mu = QQ(mu)
    return (6 * mu - 1) * mu * dim_v / (2 * (2 + dim_g) * dim_g)


def rep_alpha(rep: Representation) -> Rational:
    """Return the quartic trace constant of a representation."""
    return okubo_alpha(rep.mu, rep.dim_v, rep.lie.dim)


def quartic_trace_residual(rep: Representation, x: SparseElement) -> Rational:
    """Return Tr(rho(x)^4) - alpha K(x, x)^2."""
    m = rep.rho(x)
    square = m * m
    return trace_product(square, square) - rep_alpha(rep) * rep.lie.killing_form(x, x) ** 2


def mixed_trace_residual(rep: Representation, x: SparseElement, y: SparseElement) -> Rational:
    """Return the defect of the polarized quartic trace identity at (x, y).

    Tr(rho(x)^2 rho(y)^2) = -mu dim V / (6 dim G) K([x,y],[x,y]) + 2 alpha / 3 K(x,y)^2
    + alpha / 3 K(x,x) K(y,y).
    """
    L = rep.lie
    alpha = rep_alpha(rep)
    mx, my = rep.rho(x), rep.rho(y)
    lhs = trace_product(mx * mx, my * my)
    z = L.bracket(x, y)
    rhs = (
        -(rep.mu * rep.dim_v / (6 * L.dim)) * L.killing_form(z, z)
        + alpha * 2 / 3 * L.killing_form(x, y) ** 2
        + alpha / 3 * L.killing_form(x, x) * L.killing_form(y, y)
    )
    return lhs - rhs


def check_sigma_type(rep: Representation):
    """Raise ValidationError unless (type, dim V) admits sigma."""
    expected = SIGMA_DIMENSIONS.get(rep.lie.name)
    if expected != rep.dim_v:
        supported = ', '.join(f'{k}/{v}' for k, v in SIGMA_DIMENSIONS.items())
        raise ValidationError(
            f'sigma is defined for type/dimension {supported}; got {rep.lie.name}/{rep.dim_v}.'
        )


def sigma(rep: Representation, w: SymElement) -> DomainMatrix:
    """Return sigma(S(w)) with sigma(S(XY)) = 6 hv rho(X) o rho(Y) - K(X,Y)/2 Id.

    Args:
        rep: A representation admitting sigma.
        w: A Sym^2 g element.

    Returns:
        DomainMatrix: The image in End(V).
    """
    check_sigma_type(rep)
    L = rep.lie
    n = rep.dim_v
    six_h = 6 * L.h_check
    out = _zero(n).to_dense()
    identity = _eye(n).to_dense()
    for (i, j), c in sorted(w.items()):
        term = jordan(rep.matrices[i], rep.matrices[j]) * QQ(six_h)
        term = term - identity * (L.killing[i][j] / 2)
        out = out + term * QQ(c)
    return out


def sigma_coords(rep: Representation, t: AlgebraTable, u: Element) -> DomainMatrix:
    """Return sigma of an element of A(g) given by coordinates."""
    return sigma(rep, to_sym(t, u))


def sigma_kernel_residuals(
    rep: Representation, t: AlgebraTable, limit: int = 10
) -> list[SymElement]:
    """Return the elements of ker S, among the first limit, that sigma does not annihilate."""
    return [w for w in kernel_elements(t, limit=limit) if not is_zero(sigma(rep, w))]


def _flat(m: DomainMatrix) -> dict[int, Rational]:
    n = m.shape[1]
    return {r * n + c: v for r, row in entries(m).items() for c, v in row.items()}


def sigma_rank(rep: Representation, t: AlgebraTable) -> int:
    """Return the rank of sigma on the basis of A(g)."""
    images = [_flat(sigma_coords(rep, t, {a: QQ.one})) for a in range(t.dim_a)]
    return len(independent_subset(images))


def sl3_counit(p: DomainMatrix) -> Rational:
    """Return Tr(p) / 3."""
    return trace(p) / 3


def sl3_model_product(p: DomainMatrix, q: DomainMatrix) -> DomainMatrix:
    """Return P*Q = [eps(P o Q)/2 - 3/2 eps(P) eps(Q)] I + eps(Q) P + eps(P) Q with eps = Tr/3."""
    ep, eq = sl3_counit(p), sl3_counit(q)
    head = sl3_counit(jordan(p, q)) / 2 - QQ(3, 2) * ep * eq
    return _eye(3).to_dense() * head + p.to_dense() * eq + q.to_dense() * ep


class Sl3ModelAlgebra(CommutativeAlgebraABC):
    """M_3(QQ) with the product P*Q, on the basis of matrix units E_rc (index 3r + c)."""

    @property
    def dim(self) -> int:
        """Return 9."""
        return 9

    @property
    def unit(self) -> Element:
        """Return the identity matrix."""
        return {0: QQ.one, 4: QQ.one, 8: QQ.one}

    @staticmethod
    def to_matrix(u: Element) -> DomainMatrix:
        """Return the 3x3 matrix with coordinates u."""
        dod: dict[int, dict[int, Rational]] = {}
        for k, v in u.items():
            if v != 0:
                dod.setdefault(k // 3, {})[k % 3] = QQ(v)
        return DomainMatrix(dod, (3, 3), QQ).to_dense()

    @staticmethod
    def from_matrix(m: DomainMatrix) -> Element:
        """Return the coordinates of a 3x3 matrix."""
        return _flat(m)

    def multiply(self, u: Element, v: Element) -> Element:
        """Return u*v."""
        return self.from_matrix(sl3_model_product(self.to_matrix(u), self.to_matrix(v)))


def sigma_table_comparison(t: AlgebraTable, rep: Representation) -> list[dict]:
    """Compare the structure constants of A(sl3) with the model product transported by sigma.

    For every basis pair (a, b), sigma(a)*sigma(b) is expressed on the basis sigma(b_k) and
    compared with the structure constants of a b.

    Returns:
        list: One record per mismatching pair; empty when the two tables agree exactly.
    """
    if rep.lie.name != 'A2':
        raise ValidationError('The model product is defined for A2 only.')
    images = [sigma_coords(rep, t, {a: QQ.one}) for a in range(t.dim_a)]
    flats = [_flat(m) for m in images]
    system = to_matrix([[f.get(r, QQ.zero) for f in flats] for r in range(9)], t.dim_a)
    mismatches = []
    for a in range(t.dim_a):
        for b in range(a, t.dim_a):
            target = _flat(sl3_model_product(images[a], images[b]))
            solution = solve(system, [target.get(r, QQ.zero) for r in range(9)])
            expected = t.prod_const.get((a, b), {})
            got = {k: v for k, v in enumerate(solution or []) if v != 0}
            if solution is None or got != expected:
                mismatches.append(
                    {
                        'pair': [a, b],
                        'model': format_element(got),
                        'table': format_element(expected),
                    }
                )
    return mismatches


def sigma_equivariance_residual(
    rep: Representation, z: SparseElement, w: SymElement
) -> DomainMatrix:
    """Return sigma([ad z, S(w)]) - [rho(z), sigma(S(w))]."""
    lhs = sigma(rep, adjoint_action(rep.lie, z, w))
    return lhs - commutator(rep.rho(z), sigma(rep, w))


def project_to_image(rep: Representation, m: DomainMatrix) -> DomainMatrix:
    """Return the trace-form projection of m onto rho(g).

    The trace form on rho(g) is a multiple of K, so the projection is
    sum_j Tr(m rho(X_j)) / scale * rho(Y_j) with Y_j the K-dual basis.
    """
    L = rep.lie
    out = _zero(rep.dim_v).to_dense()
    for j in range(L.dim):
        coeff = trace_product(m, rep.matrices[j]) / rep.trace_scale
        if coeff != 0:
            out = out + rep.rho(L.dual[j]) * coeff
    return out


def pi_proj_residual(rep: Representation, x: SparseElement, y: SparseElement) -> DomainMatrix:
    """Return Proj(sigma(S(X^2)) o rho(Y)) - rho(S(X^2) Y)."""
    L = rep.lie
    square = sym_product(x, x)
    lhs = project_to_image(rep, jordan(sigma(rep, square), rep.rho(y)))
    rhs = rep.rho(s_operator(L, square).apply(y))
    return lhs - rhs


def check_pi_proj(rep: Representation, samples: int = 20, seed: int = 0) -> CheckResult:
    """Check the projection identity of sigma on seeded random X, Y.

    Args:
        rep: A representation admitting sigma.
        samples: The number of random pairs.
        seed: The random seed.

    Returns:
        CheckResult: pass, fail with the offending pair, or skipped for A2.
    """
    result = CheckResult('pi_proj')
    if rep.lie.name == 'A2':
        return result.skip('A2 excluded')
    check_sigma_type(rep)
    rng = seeded_rng(seed, 'pi-proj')
    for index in range(samples):
        x = random_element(rng, rep.lie.dim)
        y = random_element(rng, rep.lie.dim)
        if not is_zero(pi_proj_residual(rep, x, y)):
            return result.fail(
                {
                    'x': format_element(x),
                    'y': format_element(y),
                },
                sample=index,
            )
    result.detail['samples'] = samples
    return result
