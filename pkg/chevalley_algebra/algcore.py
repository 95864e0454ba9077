"""The algebra A(g): symmetric operators S(XY), the product and the counit."""
# standard library
import dataclasses
import logging
import multiprocessing
from dataclasses import dataclass, field
from functools import cached_property

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from tqdm import tqdm

# first-party
from chevalley_algebra.chevalley import LieAlgebra, SparseElement
from chevalley_algebra.exactla import axpy, column_reduction
from chevalley_algebra.unitize import (
    CommutativeAlgebraABC,
    Element,
    Table,
    UnitizedAlgebra,
    scale,
    subtract,
    table_product,
)
from chevalley_algebra.utils import ConsistencyError, Rational, ValidationError

logger = logging.getLogger(__name__)

HALF = QQ(1, 2)
QUARTER = QQ(1, 4)

Pair = tuple[int, int]
SymElement = dict[Pair, Rational]


def pair_key(i: int, j: int) -> Pair:
    """Return the monomial X_i X_j as an ordered pair."""
    return (i, j) if i <= j else (j, i)


def sym_product(u: SparseElement, v: SparseElement, c=1) -> SymElement:
    """Return c * (u v) in Sym^2 g for sparse elements u and v."""
    out: SymElement = {}
    accumulate(out, u, v, c)
    return out


def accumulate(w: SymElement, u: SparseElement, v: SparseElement, c=1) -> SymElement:
    """Add c * (u v) into the Sym^2 g element w in place."""
    if c == 0:
        return w
    for i, ui in u.items():
        for j, vj in v.items():
            key = pair_key(i, j)
            total = w.get(key, 0) + c * ui * vj
            if total == 0:
                w.pop(key, None)
            else:
                w[key] = total
    return w


def e_s(L: LieAlgebra) -> SymElement:
    """Return the Casimir tensor e_S = sum_i X_i Y_i in Sym^2 g."""
    out: SymElement = {}
    for i in range(L.dim):
        accumulate(out, {i: QQ.one}, L.dual[i])
    return out


@dataclass(frozen=True)
class SOperator:
    """A K-symmetric endomorphism of g with a Sym^2 g preimage.

    Args:
        dim: dim g.
        columns: Column l holds the image of X_l as {row: value}.
        provenance: The Sym^2 g element this operator is the image of.
    """

    dim: int
    columns: dict[int, dict[int, Rational]] = field(repr=False)
    provenance: SymElement = field(default_factory=dict)

    def apply(self, v: SparseElement) -> SparseElement:
        """Return the image of a sparse element."""
        out: SparseElement = {}
        for l, value in v.items():
            column = self.columns.get(l)
            if column:
                axpy(out, column, value)
        return out

    def trace(self) -> Rational:
        """Return the trace."""
        return sum((col.get(l, QQ.zero) for l, col in self.columns.items()), QQ.zero)

    def is_zero(self) -> bool:
        """Return True for the zero operator."""
        return not any(self.columns.values())

    def flatten(self) -> dict[int, Rational]:
        """Return the entries as a sparse vector indexed row * dim + column."""
        return {
            k * self.dim + l: value
            for l, column in self.columns.items()
            for k, value in column.items()
        }

    def to_domain_matrix(self) -> DomainMatrix:
        """Return the operator as a sparse DomainMatrix."""
        dod: dict[int, dict[int, Rational]] = {}
        for l, column in self.columns.items():
            for k, value in column.items():
                dod.setdefault(k, {})[l] = value
        return DomainMatrix(dod, (self.dim, self.dim), QQ)

    def k_symmetry_residual(self, L: LieAlgebra) -> dict[Pair, Rational]:
        """Return the nonzero entries of K M - (K M)^T."""
        km: dict[Pair, Rational] = {}
        for j, column in self.columns.items():
            for k, value in column.items():
                for i, kik in L.killing_rows[k].items():
                    key = (i, j)
                    km[key] = km.get(key, QQ.zero) + kik * value
        residual = {}
        for (i, j), value in km.items():
            diff = value - km.get((j, i), QQ.zero)
            if diff != 0:
                residual[(i, j)] = diff
        return residual

    def equals_scalar(self, c) -> bool:
        """Return True if the operator is c * Id."""
        for l in range(self.dim):
            expected = {l: QQ(c)} if c != 0 else {}
            if self.columns.get(l, {}) != expected:
                return False
        return True


def combine(dim: int, terms) -> SOperator:
    """Return sum c * op over (c, op) terms, with provenance combined linearly."""
    columns: dict[int, dict[int, Rational]] = {}
    provenance: SymElement = {}
    for c, op in terms:
        if c == 0:
            continue
        for l, column in op.columns.items():
            axpy(columns.setdefault(l, {}), column, c)
        axpy(provenance, op.provenance, c)
    return SOperator(dim, {l: col for l, col in columns.items() if col}, provenance)


def p_map(L: LieAlgebra, i: int, j: int) -> SOperator:
    """Return P(X_i X_j) = 1/2 (X_i K(X_j, -) + X_j K(X_i, -))."""
    columns: dict[int, dict[int, Rational]] = {}
    for l in range(L.dim):
        column: dict[int, Rational] = {}
        if L.killing[j][l]:
            axpy(column, {i: L.killing[j][l]}, HALF)
        if L.killing[i][l]:
            axpy(column, {j: L.killing[i][l]}, HALF)
        if column:
            columns[l] = column
    return SOperator(L.dim, columns, {pair_key(i, j): QQ.one})


def s_map(L: LieAlgebra, i: int, j: int) -> SOperator:
    """Return S(X_i X_j) = h_check (ad X_i o ad X_j) + P(X_i X_j), o the Jordan product.

    Args:
        L: The Lie algebra.
        i: First basis index.
        j: Second basis index.

    Returns:
        SOperator: The K-symmetric operator with provenance X_i X_j.
    """
    half_h = HALF * L.h_check
    columns = dict(p_map(L, i, j).columns)
    for l in range(L.dim):
        column = dict(columns.get(l, {}))
        for m, c in L.bracket_basis(j, l).items():
            axpy(column, L.bracket_basis(i, m), half_h * c)
        for m, c in L.bracket_basis(i, l).items():
            axpy(column, L.bracket_basis(j, m), half_h * c)
        if column:
            columns[l] = column
        else:
            columns.pop(l, None)
    return SOperator(L.dim, columns, {pair_key(i, j): QQ.one})


def s_operator(L: LieAlgebra, w: SymElement) -> SOperator:
    """Return S(w) for any Sym^2 g element."""
    return combine(L.dim, ((c, s_map(L, i, j)) for (i, j), c in sorted(w.items())))


def pair_weight(L: LieAlgebra, pair: Pair) -> tuple[int, ...]:
    """Return the weight of X_i X_j."""
    i, j = pair
    return tuple(a + b for a, b in zip(L.weights[i], L.weights[j]))


def generator_pairs(L: LieAlgebra) -> list[Pair]:
    """Return the generating pairs (i, j), i <= j: Cartan pairs, then mixed, then root pairs."""
    rank = L.rank
    pairs = [(i, j) for i in range(L.dim) for j in range(i, L.dim)]

    def category(pair: Pair) -> int:
        return (pair[0] >= rank) + (pair[1] >= rank)

    return sorted(pairs, key=lambda p: (category(p), p))


@dataclass(frozen=True)
class AlgebraTable(CommutativeAlgebraABC):
    """Basis, structure constants and counit of A(g).

    Args:
        lie: The Lie algebra.
        basis_pairs: The selected generating pairs; basis element a is S(X_i X_j).
        basis_ops: Their operators.
        pair_coords: Coordinates of S(X_i X_j) on the basis for every generating pair.
        unit_coords: Coordinates of e = Id_g.
        epsilon: The counit Tr / dim G on the basis.
        prod_const: Products of basis elements {(a, b): {k: c}}, a <= b.
        tau_gram: tau(a, b) = epsilon(a b).
    """

    lie: LieAlgebra = field(repr=False)
    basis_pairs: tuple[Pair, ...]
    basis_ops: tuple[SOperator, ...] = field(repr=False)
    pair_coords: dict[Pair, dict[int, Rational]] = field(repr=False)
    unit_coords: Element = field(repr=False)
    epsilon: tuple[Rational, ...] = field(repr=False)
    prod_const: Table = field(default_factory=dict, repr=False)
    tau_gram: tuple[tuple[Rational, ...], ...] = field(default=(), repr=False)

    @property
    def dim(self) -> int:
        """Return dim A."""
        return len(self.basis_pairs)

    @property
    def dim_a(self) -> int:
        """Return dim A."""
        return len(self.basis_pairs)

    @property
    def unit(self) -> Element:
        """Return the coordinates of e."""
        return self.unit_coords

    def multiply(self, u: Element, v: Element) -> Element:
        """Return u v through the structure constants."""
        return table_product(self.prod_const, u, v)

    @cached_property
    def basis_index(self) -> dict[Pair, int]:
        """Return the basis position of each selected pair."""
        return {pair: a for a, pair in enumerate(self.basis_pairs)}

    @property
    def labels(self) -> list[str]:
        """Return labels S(X_i X_j) for the basis."""
        names = self.lie.labels
        return [f'S({names[i]}*{names[j]})' for i, j in self.basis_pairs]


def coordinates(t: AlgebraTable, w: SymElement) -> Element:
    """Return the coordinates of S(w) on the basis of A(g)."""
    out: Element = {}
    for (i, j), c in w.items():
        axpy(out, t.pair_coords[pair_key(i, j)], c)
    return out


def to_sym(t: AlgebraTable, u: Element) -> SymElement:
    """Return the Sym^2 g preimage sum u_a X_i X_j of coordinates u."""
    return {t.basis_pairs[a]: c for a, c in u.items() if c != 0}


def operator_of(t: AlgebraTable, u: Element) -> SOperator:
    """Return the operator on g represented by coordinates u."""
    return combine(t.lie.dim, ((c, t.basis_ops[a]) for a, c in sorted(u.items())))


def _jordan_ad(L: LieAlgebra, c: int, d: int, v: SparseElement) -> SparseElement:
    """Return (ad X_c o ad X_d) v with o the Jordan product."""
    out: SparseElement = {}
    axpy(out, L.ad_apply(c, L.ad_apply(d, v)), HALF)
    axpy(out, L.ad_apply(d, L.ad_apply(c, v)), HALF)
    return out


def monomial_product(L: LieAlgebra, a: int, b: int, c: int, d: int) -> SymElement:
    """Return a Sym^2 g preimage of S(X_a X_b) S(X_c X_d).

    The expansion is, with J_CD = ad C o ad D and hv the dual Coxeter number,
    hv/2 [S(A, J_CD B) + S(J_CD A, B) + S(C, J_AB D) + S(J_AB C, D)
    + S([A,C],[B,D]) + S([A,D],[B,C])]
    + 1/4 [K(A,C) S(B,D) + K(A,D) S(B,C) + K(B,C) S(A,D) + K(B,D) S(A,C)].
    """
    half_h = HALF * L.h_check
    xa, xb, xc, xd = ({k: QQ.one} for k in (a, b, c, d))
    w: SymElement = {}
    accumulate(w, xa, _jordan_ad(L, c, d, xb), half_h)
    accumulate(w, _jordan_ad(L, c, d, xa), xb, half_h)
    accumulate(w, xc, _jordan_ad(L, a, b, xd), half_h)
    accumulate(w, _jordan_ad(L, a, b, xc), xd, half_h)
    accumulate(w, L.bracket_basis(a, c), L.bracket_basis(b, d), half_h)
    accumulate(w, L.bracket_basis(a, d), L.bracket_basis(b, c), half_h)
    killing = L.killing
    accumulate(w, xb, xd, QUARTER * killing[a][c])
    accumulate(w, xb, xc, QUARTER * killing[a][d])
    accumulate(w, xa, xd, QUARTER * killing[b][c])
    accumulate(w, xa, xc, QUARTER * killing[b][d])
    return w


def product_sym(L: LieAlgebra, w1: SymElement, w2: SymElement) -> SymElement:
    """Return a Sym^2 g preimage of S(w1) S(w2) by bilinear expansion over monomials."""
    out: SymElement = {}
    for (a, b), c1 in w1.items():
        for (c, d), c2 in w2.items():
            for key, value in monomial_product(L, a, b, c, d).items():
                total = out.get(key, 0) + c1 * c2 * value
                if total == 0:
                    out.pop(key, None)
                else:
                    out[key] = total
    return out


def product(t: AlgebraTable, u: Element, v: Element) -> Element:
    """Return u v evaluated from the Sym^2 g preimages of u and v.

    This evaluates the defining expansion directly rather than the cached structure constants.
    """
    return coordinates(t, product_sym(t.lie, to_sym(t, u), to_sym(t, v)))


def multiply(t: AlgebraTable, u: Element, v: Element) -> Element:
    """Return u v through the structure constants."""
    return t.multiply(u, v)


def build_basis(L: LieAlgebra, progress: bool = False) -> AlgebraTable:
    """Select a basis of A(g) = S(Sym^2 g) and coordinates of every generator.

    S commutes with the Cartan action, so S-operators of distinct weights are independent and the
    lexicographically first independent subset is found one weight block at a time.

    Args:
        L: The Lie algebra.
        progress: Show a progress bar over generator pairs.

    Returns:
        AlgebraTable: The basis, unit and counit; products are filled by structure_table.
    """
    pairs = generator_pairs(L)
    iterator = tqdm(pairs, desc=f'S({L.name})', disable=not progress)
    ops = [s_map(L, i, j) for i, j in iterator]

    blocks: dict[tuple[int, ...], list[int]] = {}
    for g, pair in enumerate(pairs):
        blocks.setdefault(pair_weight(L, pair), []).append(g)

    selected: list[int] = []
    local_coords: dict[int, tuple[list[int], dict[int, Rational]]] = {}
    for weight, members in blocks.items():
        pivots, coords = column_reduction([ops[g].flatten() for g in members], L.dim * L.dim)
        pivot_globals = [members[p] for p in pivots]
        selected.extend(pivot_globals)
        for local, g in enumerate(members):
            local_coords[g] = (pivot_globals, coords[local])
        logger.debug(f'weight {weight}: {len(members)} generators, rank {len(pivots)}')

    selected.sort()
    position = {g: a for a, g in enumerate(selected)}
    pair_coords: dict[Pair, dict[int, Rational]] = {}
    for g, pair in enumerate(pairs):
        pivot_globals, coords = local_coords[g]
        pair_coords[pair] = {position[pivot_globals[r]]: value for r, value in coords.items()}

    basis_pairs = tuple(pairs[g] for g in selected)
    basis_ops = tuple(ops[g] for g in selected)
    partial = AlgebraTable(
        lie=L,
        basis_pairs=basis_pairs,
        basis_ops=basis_ops,
        pair_coords=pair_coords,
        unit_coords={},
        epsilon=tuple(op.trace() / L.dim for op in basis_ops),
    )

    h1 = L.h_check + 1
    unit = scale(coordinates(partial, e_s(L)), QQ(1, h1))
    if not operator_of(partial, unit).equals_scalar(1):
        raise ConsistencyError(f'S(e_S) is not {h1} Id for {L.name}.')
    table = dataclasses.replace(partial, unit_coords=unit)
    logger.info(f'A({L.name}): dim {table.dim_a} from {len(pairs)} generators')
    return table


# read-only table shared with forked workers
_WORKER_TABLE: AlgebraTable | None = None


def _init_worker(t: AlgebraTable):
    global _WORKER_TABLE  # pylint: disable=global-statement
    _WORKER_TABLE = t


def _table_entry(task: Pair) -> tuple[int, int, Element]:
    a, b = task
    t = _WORKER_TABLE
    (i, j), (k, l) = t.basis_pairs[a], t.basis_pairs[b]
    return a, b, coordinates(t, monomial_product(t.lie, i, j, k, l))


def structure_table(t: AlgebraTable, threads: int = 1, progress: bool = False) -> AlgebraTable:
    """Return t with all structure constants and the tau Gram matrix filled.

    Args:
        t: A table from build_basis.
        threads: Worker processes; the result does not depend on this value.
        progress: Show a progress bar over basis pairs.

    Returns:
        AlgebraTable: The completed table.
    """
    n = t.dim_a
    tasks = [(a, b) for a in range(n) for b in range(a, n)]
    if threads > 1 and len(tasks) > 1:
        context = multiprocessing.get_context('fork')
        with context.Pool(threads, initializer=_init_worker, initargs=(t,)) as pool:
            results = list(
                tqdm(
                    pool.imap(_table_entry, tasks, chunksize=32),
                    total=len(tasks),
                    desc=f'A({t.lie.name})',
                    disable=not progress,
                )
            )
    else:
        _init_worker(t)
        results = [
            _table_entry(task)
            for task in tqdm(tasks, desc=f'A({t.lie.name})', disable=not progress)
        ]

    prod_const: Table = {}
    for a, b, value in results:
        if value:
            prod_const[(a, b)] = value
    tau = [[QQ.zero] * n for _ in range(n)]
    for (a, b), value in prod_const.items():
        tau[a][b] = tau[b][a] = sum((c * t.epsilon[k] for k, c in value.items()), QQ.zero)
    logger.info(f'A({t.lie.name}): {len(prod_const)} nonzero basis products')
    return dataclasses.replace(
        t, prod_const=prod_const, tau_gram=tuple(tuple(row) for row in tau)
    )


def build_algebra(L: LieAlgebra, threads: int = 1, progress: bool = False) -> AlgebraTable:
    """Return the complete table of A(g)."""
    return structure_table(build_basis(L, progress=progress), threads=threads, progress=progress)


def counit(t: AlgebraTable, a: Element) -> Rational:
    """Return epsilon(a) = Tr(a) / dim G."""
    return sum((c * t.epsilon[k] for k, c in a.items()), QQ.zero)


def tau(t: AlgebraTable, a: Element, b: Element) -> Rational:
    """Return tau(a, b) = epsilon(a b)."""
    return counit(t, t.multiply(a, b))


def canonical_counit(t: AlgebraTable) -> list[Rational]:
    """Return a -> Tr(M_a) / dim A on the basis, the trace counit of A itself."""
    n = t.dim_a
    values = []
    for a in range(n):
        total = QQ.zero
        for k in range(n):
            total += t.prod_const.get(pair_key(a, k), {}).get(k, QQ.zero)
        values.append(total / n)
    return values


def kernel_elements(t: AlgebraTable, limit: int | None = None) -> list[SymElement]:
    """Return a basis of ker S in Sym^2 g: each non-selected pair minus its expansion."""
    out = []
    for pair, coords in t.pair_coords.items():
        if pair in t.basis_index:
            continue
        w: SymElement = {pair: QQ.one}
        for a, c in coords.items():
            axpy(w, {t.basis_pairs[a]: c}, -1)
        out.append(w)
        if limit is not None and len(out) >= limit:
            break
    return out


def adjoint_action(L: LieAlgebra, z: SparseElement, w: SymElement) -> SymElement:
    """Return the preimage of [ad Z, S(w)] given by S([Z,A]B) + S(A[Z,B])."""
    out: SymElement = {}
    for (a, b), c in w.items():
        xa, xb = {a: QQ.one}, {b: QQ.one}
        accumulate(out, L.bracket(z, xa), xb, c)
        accumulate(out, xa, L.bracket(z, xb), c)
    return out


@dataclass(frozen=True)
class CounitSplit:
    """A(g) written as Unit(V, f) with V = ker epsilon.

    The new basis is e followed by v_a = b_a - epsilon_a e for a != q, where q is the first
    coordinate of e that is nonzero.

    Args:
        algebra: The algebra Unit(V, f).
        pivot: The index q.
        unit: The coordinates of e in the table basis.
        epsilon: The counit on the table basis.
    """

    algebra: UnitizedAlgebra
    pivot: int
    unit: Element = field(repr=False)
    epsilon: tuple[Rational, ...] = field(repr=False)

    @cached_property
    def others(self) -> list[int]:
        """Return the table indices a != q in order."""
        return [a for a in range(len(self.epsilon)) if a != self.pivot]

    def to_table(self, x: Element) -> Element:
        """Return table coordinates of an element given in Unit(V, f) coordinates."""
        x0, x1 = UnitizedAlgebra.split(x)
        shift = x0 - sum((c * self.epsilon[self.others[k]] for k, c in x1.items()), QQ.zero)
        out = scale(self.unit, shift)
        for k, c in x1.items():
            axpy(out, {self.others[k]: c})
        return out

    def from_table(self, y: Element) -> Element:
        """Return Unit(V, f) coordinates of an element given in table coordinates."""
        x0 = sum((c * self.epsilon[k] for k, c in y.items()), QQ.zero)
        s = y.get(self.pivot, QQ.zero) / self.unit[self.pivot]
        x1 = {}
        for k, a in enumerate(self.others):
            value = y.get(a, QQ.zero) - s * self.unit.get(a, QQ.zero)
            if value != 0:
                x1[k] = value
        return UnitizedAlgebra.join(x0, x1)


def split_by_counit(
    A: CommutativeAlgebraABC, unit: Element, epsilon: tuple[Rational, ...]
) -> CounitSplit:
    """Return the splitting A = k e + ker epsilon for any unital algebra with a counit.

    Args:
        A: The algebra.
        unit: The coordinates of its identity.
        epsilon: A linear form on the basis with epsilon(unit) = 1.

    Returns:
        CounitSplit: The algebra Unit(V, f) and the coordinate maps.
    """
    value = sum((c * epsilon[k] for k, c in unit.items()), QQ.zero)
    if value != 1:
        raise ValidationError(f'Counit takes the value {value} on the unit, expected 1.')
    dim_v = A.dim - 1
    partial = CounitSplit(
        algebra=UnitizedAlgebra(dim_v=dim_v, dot={}, form={}),
        pivot=min(a for a, c in unit.items() if c != 0),
        unit=unit,
        epsilon=tuple(epsilon),
    )
    vectors = [partial.to_table({k + 1: QQ.one}) for k in range(dim_v)]
    dot: Table = {}
    form: dict[Pair, Rational] = {}
    for a, va in enumerate(vectors):
        for b in range(a, dim_v):
            head, tail = UnitizedAlgebra.split(partial.from_table(A.multiply(va, vectors[b])))
            if head != 0:
                form[(a, b)] = head
            if tail:
                dot[(a, b)] = tail
    return dataclasses.replace(partial, algebra=UnitizedAlgebra(dim_v=dim_v, dot=dot, form=form))


def counit_split(t: AlgebraTable) -> CounitSplit:
    """Return the splitting A = k e + ker epsilon with the induced product and form."""
    return split_by_counit(t, t.unit_coords, t.epsilon)


def split_counit(t: AlgebraTable) -> UnitizedAlgebra:
    """Return Unit(V, f) with V = ker epsilon, v.v' = vv' - f(v,v') e and f(v,v') = epsilon(vv')."""
    return counit_split(t).algebra


def s_plus(t: AlgebraTable, w: SymElement) -> Element:
    """Return S(w) - epsilon(S(w)) e, the projection of S(w) to V."""
    s = coordinates(t, w)
    return subtract(s, scale(t.unit_coords, counit(t, s)))


def jordan_product_cartan(L: LieAlgebra, x, y, z, w) -> SymElement:
    """Return i(P(xy) o P(zw)) for Cartan elements as a Sym^2 g element.

    Expands to 1/4 [K(x,z) S(yw) + K(x,w) S(yz) + K(y,z) S(xw) + K(y,w) S(xz)].
    """
    out: SymElement = {}
    accumulate(out, y, w, QUARTER * L.killing_form(x, z))
    accumulate(out, y, z, QUARTER * L.killing_form(x, w))
    accumulate(out, x, w, QUARTER * L.killing_form(y, z))
    accumulate(out, x, z, QUARTER * L.killing_form(y, w))
    return out


