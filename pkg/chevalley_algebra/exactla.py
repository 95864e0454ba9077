"""Exact rational linear algebra kernel."""
# standard library
import logging
import math
from collections.abc import Hashable, Iterable, Mapping, Sequence

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# first-party
from chevalley_algebra.utils import Rational, ValidationError, to_rational

logger = logging.getLogger(__name__)

# word-size primes for the modular rank pre-pass
DEFAULT_PRIMES = (2147483647, 2147483629, 2147483587)

SparseVector = dict[Hashable, Rational]


def axpy(acc: dict, vec: Mapping, scale=1) -> dict:
    """Add scale * vec into acc in place, dropping exact zeros.

    Args:
        acc: The sparse accumulator.
        vec: The sparse vector to add.
        scale: The scalar factor.

    Returns:
        dict: The accumulator.
    """
    if scale == 0:
        return acc
    for key, value in vec.items():
        total = acc.get(key, 0) + scale * value
        if total == 0:
            acc.pop(key, None)
        else:
            acc[key] = total
    return acc


def to_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    """Return a dense list of rows as a sparse DomainMatrix over QQ.

    Args:
        rows: The matrix rows; entries may be ints, rationals or "p/q" strings.
        ncols: The column count, required when rows is empty.

    Returns:
        DomainMatrix: The matrix over QQ.
    """
    if ncols is None:
        if not rows:
            raise ValidationError('Column count required for an empty matrix.')
        ncols = len(rows[0])
    dod = {}
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ValidationError(f'Row {i} has {len(row)} entries, expected {ncols}.')
        entries = {j: to_rational(v) for j, v in enumerate(row) if v != 0}
        if entries:
            dod[i] = entries
    return DomainMatrix(dod, (len(rows), ncols), QQ)


def from_columns(columns: Sequence[Mapping[int, Rational]], nrows: int) -> DomainMatrix:
    """Return the matrix whose j-th column is the sparse vector columns[j]."""
    dod: dict[int, dict[int, Rational]] = {}
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value != 0:
                dod.setdefault(i, {})[j] = QQ(value)
    return DomainMatrix(dod, (nrows, len(columns)), QQ)


def entries(m: DomainMatrix) -> dict[int, dict[int, Rational]]:
    """Return the nonzero entries of m as a dict of row dicts."""
    return m.to_sparse().to_dod()


def to_rows(m: DomainMatrix) -> list[list[Rational]]:
    """Return m as dense rows."""
    return m.to_dense().to_list()


def rref(m: DomainMatrix) -> tuple[DomainMatrix, tuple[int, ...]]:
    """Return the reduced row echelon form of m and its pivot columns.

    Args:
        m: The matrix over QQ.

    Returns:
        tuple: The exact reduced matrix and the pivot column indices.
    """
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return m, ()
    reduced, pivots = m.to_sparse().rref()
    return reduced, tuple(pivots)


def _integer_row(row: Mapping[int, Rational]) -> dict[int, int]:
    """Return a rational row scaled by the lcm of its denominators."""
    scale = 1
    for value in row.values():
        scale = math.lcm(scale, int(value.denominator))
    return {j: int(v.numerator) * (scale // int(v.denominator)) for j, v in row.items()}


def modular_echelon(rows: Iterable[Mapping[int, int]], p: int) -> tuple[int, list[int]]:
    """Sparse modular Gaussian elimination on integer row dicts.

    Args:
        rows: Integer rows as {column: value}.
        p: The prime modulus.

    Returns:
        tuple: The rank mod p and the indices of the rows that raised it.
    """
    pivots: dict[int, dict[int, int]] = {}
    selected = []
    for index, row in enumerate(rows):
        r = {c: v % p for c, v in row.items() if v % p}
        for pc in sorted(pivots):
            if not r:
                break
            coeff = r.get(pc, 0)
            if coeff == 0:
                continue
            for c, pv in pivots[pc].items():
                value = (r.get(c, 0) - coeff * pv) % p
                if value:
                    r[c] = value
                else:
                    r.pop(c, None)
            r.pop(pc, None)
        if not r:
            continue
        pivot_col = min(r)
        inv = pow(r[pivot_col], p - 2, p)
        pivots[pivot_col] = {c: (v * inv) % p for c, v in r.items()}
        selected.append(index)
    return len(selected), selected


def modular_rank(m: DomainMatrix, primes: Sequence[int] = DEFAULT_PRIMES) -> int:
    """Return the largest rank of m over the given prime fields.

    This is a certified lower bound for the rank over QQ.
    """
    rows = [_integer_row(row) for row in entries(m).values()]
    best = 0
    for p in primes:
        best = max(best, modular_echelon(rows, p)[0])
    return best


def rank(m: DomainMatrix, primes: Sequence[int] | None = DEFAULT_PRIMES) -> int:
    """Return the exact rank of m.

    A modular pass runs first; when it already reaches min(rows, cols) the rank is certified
    without rational elimination.

    Args:
        m: The matrix over QQ.
        primes: Primes for the modular pre-pass, or None to skip it.

    Returns:
        int: The rank over QQ.
    """
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return 0
    if primes:
        bound = modular_rank(m, primes)
        if bound == min(nrows, ncols):
            logger.debug(f'rank {bound} certified by modular pass ({nrows}x{ncols})')
            return bound
    return len(rref(m)[1])


def kernel(m: DomainMatrix) -> list[list[Rational]]:
    """Return a basis of the right kernel {x : m x = 0} as dense vectors."""
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [[QQ.one if i == j else QQ.zero for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(m)
    rows = entries(reduced)
    basis = []
    pivot_set = set(pivots)
    for free in (j for j in range(ncols) if j not in pivot_set):
        vector = [QQ.zero] * ncols
        vector[free] = QQ.one
        for r, pc in enumerate(pivots):
            vector[pc] = -rows.get(r, {}).get(free, QQ.zero)
        basis.append(vector)
    return basis


def solve(m: DomainMatrix, b: Sequence) -> list[Rational] | None:
    """Return one exact solution x of m x = b, or None when the system is inconsistent.

    Args:
        m: The coefficient matrix over QQ.
        b: The right hand side.

    Returns:
        list | None: A solution with free variables set to zero.
    """
    nrows, ncols = m.shape
    if len(b) != nrows:
        raise ValidationError(f'Right hand side has {len(b)} entries, expected {nrows}.')
    column = to_matrix([[v] for v in b], 1) if nrows else DomainMatrix({}, (0, 1), QQ)
    reduced, pivots = rref(m.to_sparse().hstack(column.to_sparse()))
    if ncols in pivots:
        return None
    rows = entries(reduced)
    x = [QQ.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows.get(r, {}).get(ncols, QQ.zero)
    return x


def inverse(m: DomainMatrix) -> DomainMatrix:
    """Return the exact inverse of a square matrix."""
    nrows, ncols = m.shape
    if nrows != ncols:
        raise ValidationError(f'Cannot invert a {nrows}x{ncols} matrix.')
    return m.to_dense().inv()


def independent_subset(
    vectors: Sequence, primes: Sequence[int] | None = None
) -> list[int]:
    """Return the lexicographically first maximal independent subset of vectors.

    Vector j is selected iff it is not in the span of vectors 0..j-1.

    Args:
        vectors: Dense sequences or sparse {index: value} dicts of equal length.
        primes: Optional primes for a modular pre-pass; when every vector is independent
            modulo a prime the full index list is returned without rational elimination.

    Returns:
        list: The selected indices in increasing order.
    """
    columns = [
        {k: QQ(v) for k, v in vec.items() if v != 0}
        if isinstance(vec, Mapping)
        else {k: to_rational(v) for k, v in enumerate(vec) if v != 0}
        for vec in vectors
    ]
    if not columns:
        return []
    nrows = 1 + max((max(c) for c in columns if c), default=0)
    if primes:
        rows = [_integer_row(column) for column in columns]
        for p in primes:
            count, selected = modular_echelon(rows, p)
            if count == len(columns):
                return selected
    return list(rref(from_columns(columns, nrows))[1])


def column_reduction(
    columns: Sequence[Mapping[int, Rational]], nrows: int
) -> tuple[tuple[int, ...], list[dict[int, Rational]]]:
    """Return pivot columns and the coordinates of every column on the pivot columns.

    The matrix with the given columns is brought to reduced row echelon form; pivot columns are
    the lexicographically first independent subset and column j equals
    sum_r coords[j][r] * columns[pivots[r]].

    Args:
        columns: Sparse column vectors.
        nrows: The ambient dimension.

    Returns:
        tuple: The pivot indices and one sparse coordinate dict per column, keyed by pivot
            position r.
    """
    if not columns:
        return (), []
    reduced, pivots = rref(from_columns(columns, nrows))
    rows = entries(reduced)
    coords: list[dict[int, Rational]] = [{} for _ in columns]
    for r, row in rows.items():
        for j, value in row.items():
            coords[j][r] = value
    return pivots, coords


class EchelonBasis:
    """Incremental echelon basis of a subspace of sparse rational vectors.

    Rows are stored with a normalized leading coefficient at their smallest key, so incoming
    vectors reduce in increasing pivot order.
    """

    def __init__(self):
        """Initialize class properties."""
        self.pivots: dict = {}

    def __len__(self) -> int:
        """Return the dimension of the span."""
        return len(self.pivots)

    def reduce(self, vector: Mapping) -> dict:
        """Return the residual of vector after elimination against the basis."""
        r = {k: v for k, v in vector.items() if v != 0}
        for pc in sorted(self.pivots):
            if not r:
                break
            coeff = r.get(pc)
            if coeff is None:
                continue
            axpy(r, self.pivots[pc], -coeff)
        return r

    def add(self, vector: Mapping) -> bool:
        """Add vector to the span; return True if the dimension grew."""
        r = self.reduce(vector)
        if not r:
            return False
        pivot_col = min(r)
        lead = r[pivot_col]
        self.pivots[pivot_col] = {k: v / lead for k, v in r.items()}
        return True

    def contains(self, vector: Mapping) -> bool:
        """Return True if vector lies in the span."""
        return not self.reduce(vector)


def trace(m: DomainMatrix) -> Rational:
    """Return the trace of a square matrix."""
    rows = entries(m)
    return sum((row.get(i, QQ.zero) for i, row in rows.items()), QQ.zero)


def rational_eigenvalues(
    m: DomainMatrix,
) -> tuple[dict[Rational, int], list[tuple[list[Rational], int]]]:
    """Return the rational eigenvalues of m and the remaining irreducible factors.

    The characteristic polynomial is factored over QQ; linear factors give the rational
    eigenvalues with their algebraic multiplicities.

    Returns:
        tuple: {eigenvalue: multiplicity} and [(factor coefficients, multiplicity)] for the
            irreducible factors of degree two or more.
    """
    roots: dict[Rational, int] = {}
    others = []
    for factor, multiplicity in m.to_dense().charpoly_factor_list():
        coeffs = [QQ(c) for c in factor]
        if len(coeffs) == 2:
            value = -coeffs[1] / coeffs[0]
            roots[value] = roots.get(value, 0) + multiplicity
        else:
            others.append((coeffs, multiplicity))
    return roots, others
