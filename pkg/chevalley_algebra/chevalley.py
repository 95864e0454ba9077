"""Split simple Lie algebras over QQ in a Chevalley basis."""
# standard library
import logging
from dataclasses import dataclass, field
from functools import cached_property

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# first-party
from chevalley_algebra.exactla import axpy, inverse, to_matrix, to_rows
from chevalley_algebra.rootsys import Root, RootDatum
from chevalley_algebra.utils import ConsistencyError, Rational

logger = logging.getLogger(__name__)

SparseElement = dict[int, Rational]


def _add(r: Root, s: Root) -> Root:
    return tuple(a + b for a, b in zip(r, s))


def _neg(r: Root) -> Root:
    return tuple(-a for a in r)


def _is_positive(r: Root) -> bool:
    return sum(r) > 0


class ExtraspecialSigns:
    """Structure constants N_{alpha,beta} with positive signs on extraspecial pairs.

    For each positive non-simple root xi the extraspecial pair (alpha, beta) has alpha minimal
    in the root order among positive roots with xi - alpha a root, and N_{alpha,beta} = p + 1
    where p is the largest integer with beta - p alpha a root. Every other constant follows
    from the identities

    * N_{s,r} = -N_{r,s} and N_{-r,-s} = -N_{r,s}
    * N_{r,s}/<t,t> = N_{s,t}/<r,r> = N_{t,r}/<s,s> when r + s + t = 0
    * the four-root relation for r + s + t + u = 0 with no opposite pair.

    Args:
        datum: The root datum.
    """

    def __init__(self, datum: RootDatum):
        """Initialize class properties."""
        self.datum = datum
        self._order = {r: k for k, r in enumerate(datum.positive_roots)}
        self._special: dict[tuple[Root, Root], Rational] = {}
        self._extraspecial: dict[Root, tuple[Root, Root]] = {}

    def _norm(self, r: Root) -> Rational:
        return self.datum.inner(r, r)

    def string_length(self, alpha: Root, beta: Root) -> int:
        """Return the largest p with beta - p alpha a root."""
        p = 0
        current = beta
        while True:
            current = _add(current, _neg(alpha))
            if not self.datum.is_root(current):
                return p
            p += 1

    def extraspecial(self, xi: Root) -> tuple[Root, Root]:
        """Return the extraspecial pair of a positive non-simple root."""
        if xi not in self._extraspecial:
            for alpha in self.datum.positive_roots:
                beta = _add(xi, _neg(alpha))
                if alpha != xi and self.datum.is_root(beta) and _is_positive(beta):
                    self._extraspecial[xi] = (alpha, beta)
                    break
            else:
                raise ConsistencyError(f'No extraspecial pair for {xi}.')
        return self._extraspecial[xi]

    def special(self, a: Root, b: Root) -> Rational:
        """Return N_{a,b} for a special pair (both positive, a before b)."""
        key = (a, b)
        if key in self._special:
            return self._special[key]
        xi = _add(a, b)
        alpha, beta = self.extraspecial(xi)
        if a == alpha:
            value = QQ(self.string_length(alpha, beta) + 1)
        else:
            total = QQ.zero
            beta_a = _add(beta, _neg(a))
            if self.datum.is_root(beta_a):
                total += self.n(beta, _neg(a)) * self.n(alpha, _neg(b)) / self._norm(beta_a)
            alpha_a = _add(alpha, _neg(a))
            if self.datum.is_root(alpha_a):
                total += self.n(_neg(a), alpha) * self.n(beta, _neg(b)) / self._norm(alpha_a)
            value = self._norm(xi) * total / self.n(alpha, beta)
        if value.denominator != 1 or abs(value) != self.string_length(a, b) + 1:
            raise ConsistencyError(f'Structure constant N{a},{b} = {value} is not +-(p+1).')
        self._special[key] = value
        return value

    def n(self, r: Root, s: Root) -> Rational:
        """Return N_{r,s}, zero when r + s is not a root."""
        t = _add(r, s)
        if not self.datum.is_root(t):
            return QQ.zero
        r_pos, s_pos = _is_positive(r), _is_positive(s)
        if r_pos and s_pos:
            if self._order[r] < self._order[s]:
                return self.special(r, s)
            return -self.special(s, r)
        if not r_pos and not s_pos:
            return -self.n(_neg(r), _neg(s))
        if not r_pos:
            return -self.n(s, r)
        if _is_positive(t):
            return -(self._norm(t) / self._norm(r)) * self.n(_neg(s), t)
        return (self._norm(t) / self._norm(s)) * self.n(_neg(t), r)


@dataclass(frozen=True)
class LieAlgebra:
    """Chevalley basis H_1..H_l, X_alpha (root order) with exact structure constants.

    Args:
        datum: The root datum.
        labels: Basis labels.
        weights: The weight (simple-root coordinates) of every basis element.
        root_index: Basis index of X_alpha.
        brackets: Nonzero [X_i, X_j] as sparse integer combinations.
        killing: The Killing Gram matrix.
        dual: The K-dual basis Y_j with K(X_i, Y_j) = delta_ij.
    """

    datum: RootDatum
    labels: tuple[str, ...]
    weights: tuple[Root, ...] = field(repr=False)
    root_index: dict[Root, int] = field(repr=False)
    brackets: dict[tuple[int, int], dict[int, int]] = field(repr=False)
    killing: tuple[tuple[Rational, ...], ...] = field(repr=False)
    dual: tuple[SparseElement, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        """Return dim G."""
        return len(self.labels)

    @property
    def rank(self) -> int:
        """Return the rank."""
        return self.datum.rank

    @property
    def h_check(self) -> int:
        """Return the dual Coxeter number."""
        return self.datum.h_check

    @property
    def name(self) -> str:
        """Return the type string."""
        return self.datum.name

    def bracket_basis(self, i: int, j: int) -> dict[int, int]:
        """Return [X_i, X_j]."""
        return self.brackets.get((i, j), {})

    def bracket(self, u: SparseElement, v: SparseElement) -> SparseElement:
        """Return [u, v] for sparse elements."""
        out: SparseElement = {}
        for i, ui in u.items():
            for j, vj in v.items():
                term = self.brackets.get((i, j))
                if term:
                    axpy(out, term, ui * vj)
        return out

    def ad_apply(self, i: int, v: SparseElement) -> SparseElement:
        """Return [X_i, v]."""
        out: SparseElement = {}
        for j, vj in v.items():
            term = self.brackets.get((i, j))
            if term:
                axpy(out, term, vj)
        return out

    def killing_form(self, u: SparseElement, v: SparseElement) -> Rational:
        """Return K(u, v)."""
        total = QQ.zero
        for i, ui in u.items():
            row = self.killing[i]
            for j, vj in v.items():
                if row[j]:
                    total += ui * vj * row[j]
        return total

    @cached_property
    def ad_columns(self) -> tuple[dict[int, dict[int, int]], ...]:
        """Return, per basis element i, the map l -> [X_i, X_l]."""
        columns: list[dict[int, dict[int, int]]] = [{} for _ in range(self.dim)]
        for (i, j), term in self.brackets.items():
            columns[i][j] = term
        return tuple(columns)

    @cached_property
    def killing_rows(self) -> tuple[dict[int, Rational], ...]:
        """Return the nonzero entries of each row of the Killing Gram matrix."""
        return tuple(
            {j: value for j, value in enumerate(row) if value != 0} for row in self.killing
        )

    def ad_matrix(self, u: SparseElement) -> DomainMatrix:
        """Return the matrix of ad u (column l holds [u, X_l])."""
        dod: dict[int, dict[int, Rational]] = {}
        for l in range(self.dim):
            for k, value in self.ad_apply_element(u, l).items():
                dod.setdefault(k, {})[l] = value
        return DomainMatrix(dod, (self.dim, self.dim), QQ)

    def ad_apply_element(self, u: SparseElement, l: int) -> SparseElement:
        """Return [u, X_l]."""
        return self.bracket(u, {l: QQ.one})

    def structure_constant(self, alpha: Root, beta: Root) -> int:
        """Return N_{alpha,beta} ([X_alpha, X_beta] = N X_{alpha+beta}), zero if not a root."""
        gamma = _add(alpha, beta)
        if gamma not in self.root_index:
            return 0
        term = self.bracket_basis(self.root_index[alpha], self.root_index[beta])
        return int(term.get(self.root_index[gamma], 0))

    def cartan_element(self, coeffs) -> SparseElement:
        """Return sum_i coeffs[i] H_i."""
        return {i: QQ(c) for i, c in enumerate(coeffs) if c != 0}


def _label(alpha: Root) -> str:
    return 'X(' + ','.join(str(c) for c in alpha) + ')'


def _structure_table(d: RootDatum, root_index: dict[Root, int]) -> dict:
    """Return all nonzero brackets of basis elements."""
    signs = ExtraspecialSigns(d)
    rank = d.rank
    brackets: dict[tuple[int, int], dict[int, int]] = {}
    for alpha, ia in root_index.items():
        for i in range(rank):
            c = d.simple_pairing(alpha, i)
            if c:
                brackets[(i, ia)] = {ia: c}
                brackets[(ia, i)] = {ia: -c}
        for beta, ib in root_index.items():
            gamma = _add(alpha, beta)
            if all(c == 0 for c in gamma):
                coroot = d.coroot_coordinates(alpha)
                brackets[(ia, ib)] = {i: c for i, c in enumerate(coroot) if c}
            elif gamma in root_index:
                n = signs.n(alpha, beta)
                brackets[(ia, ib)] = {root_index[gamma]: int(n)}
    return brackets


def jacobi_residuals(L: LieAlgebra, generators: list[int] | None = None) -> list[tuple]:
    """Return basis triples (g, x, y) with a nonzero Jacobi residual.

    Args:
        L: The Lie algebra.
        generators: First entries to test; defaults to the Chevalley generators X_{+-alpha_i},
            which generate the algebra, so an empty result certifies Jacobi on all triples.

    Returns:
        list: The offending triples with their residual.
    """
    if generators is None:
        generators = []
        for alpha in L.datum.simple_roots:
            generators.append(L.root_index[alpha])
            generators.append(L.root_index[_neg(alpha)])
    failures = []
    for g in generators:
        for x in range(L.dim):
            ex = {x: QQ.one}
            gx = L.ad_apply(g, ex)
            for y in range(x + 1, L.dim):
                ey = {y: QQ.one}
                residual = L.ad_apply(g, L.bracket(ex, ey))
                axpy(residual, L.bracket(gx, ey), -1)
                axpy(residual, L.bracket(ex, L.ad_apply(g, ey)), -1)
                if residual:
                    failures.append((g, x, y, residual))
    return failures


def killing_form(L: LieAlgebra) -> tuple[tuple[Rational, ...], ...]:
    """Return the Gram matrix K(X_i, X_j) = Tr(ad X_i ad X_j) from the structure constants."""
    columns = L.ad_columns
    gram = [[QQ.zero] * L.dim for _ in range(L.dim)]
    by_weight: dict[Root, list[int]] = {}
    for i, w in enumerate(L.weights):
        by_weight.setdefault(w, []).append(i)
    for i in range(L.dim):
        opposite = _neg(L.weights[i])
        for j in by_weight.get(opposite, []):
            if j < i:
                continue
            total = 0
            for k, column in columns[i].items():
                for l, value in column.items():
                    total += value * columns[j].get(l, {}).get(k, 0)
            gram[i][j] = gram[j][i] = QQ(total)
    return tuple(tuple(row) for row in gram)


def dual_basis(L: LieAlgebra) -> tuple[SparseElement, ...]:
    """Return Y_j with K(X_i, Y_j) = delta_ij.

    Root vectors pair only with their opposite and the Cartan block is inverted exactly.
    """
    rank = L.rank
    block = [[L.killing[i][j] for j in range(rank)] for i in range(rank)]
    block_inverse = to_rows(inverse(to_matrix(block)))
    dual: list[SparseElement] = []
    for j in range(rank):
        dual.append({m: block_inverse[m][j] for m in range(rank) if block_inverse[m][j] != 0})
    for j in range(rank, L.dim):
        opposite = L.root_index[_neg(L.weights[j])]
        value = L.killing[j][opposite]
        if value == 0:
            raise ConsistencyError(f'Killing form is singular at {L.labels[j]}.')
        dual.append({opposite: 1 / value})
    return tuple(dual)


def build_chevalley(d: RootDatum) -> LieAlgebra:
    """Return the split simple Lie algebra of a root datum in a Chevalley basis.

    Args:
        d: The root datum.

    Returns:
        LieAlgebra: Brackets, Killing form and dual basis, all exact.
    """
    rank = d.rank
    labels = [f'H{i + 1}' for i in range(rank)] + [_label(r) for r in d.roots]
    weights = [tuple(0 for _ in range(rank))] * rank + list(d.roots)
    root_index = {r: rank + k for k, r in enumerate(d.roots)}
    brackets = _structure_table(d, root_index)

    partial = LieAlgebra(
        datum=d,
        labels=tuple(labels),
        weights=tuple(weights),
        root_index=root_index,
        brackets=brackets,
        killing=(),
        dual=(),
    )
    failures = jacobi_residuals(partial)
    if failures:
        g, x, y, residual = failures[0]
        raise ConsistencyError(
            f'Jacobi identity fails for {d.name} at ({labels[g]}, {labels[x]}, {labels[y]}): '
            f'{residual}.'
        )
    killing = killing_form(partial)
    with_killing = LieAlgebra(
        datum=d,
        labels=tuple(labels),
        weights=tuple(weights),
        root_index=root_index,
        brackets=brackets,
        killing=killing,
        dual=(),
    )
    lie = LieAlgebra(
        datum=d,
        labels=tuple(labels),
        weights=tuple(weights),
        root_index=root_index,
        brackets=brackets,
        killing=killing,
        dual=dual_basis(with_killing),
    )
    logger.info(f'built Chevalley basis of {d.name}: dim {lie.dim}, {len(brackets)} brackets')
    return lie


def casimir_operator(L: LieAlgebra) -> dict[tuple[int, int], Rational]:
    """Return sum_i ad(X_i) ad(Y_i) as a sparse matrix {(row, col): value}."""
    out: dict[tuple[int, int], Rational] = {}
    for i in range(L.dim):
        for l in range(L.dim):
            image = L.ad_apply(i, L.bracket(L.dual[i], {l: QQ.one}))
            for k, value in image.items():
                axpy(out, {(k, l): value})
    return out


def orthogonal_cartan_basis(L: LieAlgebra) -> list[SparseElement]:
    """Return a K-orthogonal basis of the Cartan subalgebra by Gram-Schmidt over QQ."""
    basis: list[SparseElement] = []
    for i in range(L.rank):
        vector: SparseElement = {i: QQ.one}
        for u in basis:
            coeff = L.killing_form(vector, u) / L.killing_form(u, u)
            axpy(vector, u, -coeff)
        basis.append(vector)
    return basis
