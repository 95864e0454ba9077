"""Commutative algebras given by structure constants and the Unit(V, f) construction."""
# standard library
import itertools
import logging
import random
from abc import ABC, abstractmethod
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

# third-party
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# first-party
from chevalley_algebra.exactla import EchelonBasis, axpy, entries, from_columns, trace
from chevalley_algebra.utils import (
    Rational,
    ValidationError,
    format_element,
    format_rational,
    random_rational,
    seeded_rng,
    to_rational,
)

logger = logging.getLogger(__name__)

Element = dict[int, Rational]
Table = dict[tuple[int, int], dict[int, Rational]]

# coordinates used by the deterministic witness enumeration
WITNESS_VALUES = (1, -1, 2)


def scale(u: Element, c) -> Element:
    """Return c * u."""
    if c == 0:
        return {}
    return {k: c * v for k, v in u.items()}


def add(*elements: Element) -> Element:
    """Return the sum of sparse elements."""
    out: Element = {}
    for element in elements:
        axpy(out, element)
    return out


def subtract(u: Element, v: Element) -> Element:
    """Return u - v."""
    return axpy(dict(u), v, -1)


def random_element(
    rng: random.Random, dim: int, bound: int = 3, support: int | None = None
) -> Element:
    """Return a seeded random element with small rational coordinates.

    Args:
        rng: The random generator.
        dim: The ambient dimension.
        bound: The numerator/denominator bound.
        support: The number of nonzero coordinates, all when None.
    """
    indices = range(dim) if support is None else sorted(rng.sample(range(dim), min(support, dim)))
    out: Element = {}
    for k in indices:
        value = random_rational(rng, bound)
        if value != 0:
            out[k] = value
    return out


def _check_table(dim: int, table: Table, name: str) -> Table:
    """Return a table keyed by (a, b) with a <= b after a symmetry and range check."""
    normalized: Table = {}
    for (a, b), value in table.items():
        if not (0 <= a < dim and 0 <= b < dim):
            raise ValidationError(f'{name} index ({a}, {b}) outside dimension {dim}.')
        if any(not 0 <= k < dim for k in value):
            raise ValidationError(f'{name} output index outside dimension {dim} at ({a}, {b}).')
        key = (min(a, b), max(a, b))
        clean = {k: to_rational(v) for k, v in value.items() if v != 0}
        if key in normalized and normalized[key] != clean:
            raise ValidationError(f'{name} is not symmetric at ({a}, {b}).')
        if clean:
            normalized[key] = clean
    return normalized


def table_product(table: Table, u: Element, v: Element) -> Element:
    """Return the bilinear extension of a symmetric structure-constant table."""
    out: Element = {}
    for a, ua in u.items():
        for b, vb in v.items():
            term = table.get((a, b) if a <= b else (b, a))
            if term:
                axpy(out, term, ua * vb)
    return out


class CommutativeAlgebraABC(ABC):
    """Base commutative algebra over QQ with sparse coordinates on a fixed basis."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Return the dimension."""
        raise NotImplementedError(  # pragma: no cover
            'This method must be implemented in child class.'
        )

    @property
    @abstractmethod
    def unit(self) -> Element:
        """Return the coordinates of the multiplicative identity."""
        raise NotImplementedError(  # pragma: no cover
            'This method must be implemented in child class.'
        )

    @abstractmethod
    def multiply(self, u: Element, v: Element) -> Element:
        """Return the product u v."""
        raise NotImplementedError(  # pragma: no cover
            'This method must be implemented in child class.'
        )

    def basis_element(self, i: int) -> Element:
        """Return the i-th basis vector."""
        return {i: QQ.one}

    def square(self, a: Element) -> Element:
        """Return a a."""
        return self.multiply(a, a)

    def pa1_residual(self, a: Element) -> Element:
        """Return a(a(aa)) - (aa)(aa), the degree-4 power-associativity residual."""
        aa = self.square(a)
        return subtract(self.multiply(a, self.multiply(a, aa)), self.square(aa))

    def jordan_residual(self, x: Element, y: Element) -> Element:
        """Return x(x^2 y) - x^2(xy)."""
        xx = self.square(x)
        return subtract(
            self.multiply(x, self.multiply(xx, y)), self.multiply(xx, self.multiply(x, y))
        )

    def left_multiplication(self, a: Element) -> DomainMatrix:
        """Return the matrix of b -> a b (column l holds a b_l)."""
        columns = [self.multiply(a, self.basis_element(l)) for l in range(self.dim)]
        return from_columns(columns, self.dim)

    def jordan_commutator(self, x: Element) -> DomainMatrix:
        """Return [M_x, M_{x^2}], zero exactly when the Jordan identity holds at x."""
        mx = self.left_multiplication(x)
        mxx = self.left_multiplication(self.square(x))
        return mx.matmul(mxx) - mxx.matmul(mx)

    def structure_constants(self) -> Table:
        """Return the products of basis vectors keyed by (a, b), a <= b."""
        table: Table = {}
        for a in range(self.dim):
            for b in range(a, self.dim):
                value = self.multiply(self.basis_element(a), self.basis_element(b))
                if value:
                    table[(a, b)] = value
        return table


class TableAlgebra(CommutativeAlgebraABC):
    """A commutative algebra given by its structure constants.

    Args:
        dim: The dimension.
        table: Products of basis vectors {(a, b): {k: c}}; either order of (a, b) is accepted.
        unit: The coordinates of the identity, when the algebra is unital.
    """

    def __init__(self, dim: int, table: Table, unit: Element | None = None):
        """Initialize class properties."""
        self._dim = dim
        self.table = _check_table(dim, table, 'Structure table')
        self._unit = dict(unit) if unit is not None else None

    @property
    def dim(self) -> int:
        """Return the dimension."""
        return self._dim

    @property
    def unit(self) -> Element:
        """Return the identity coordinates."""
        if self._unit is None:
            raise ValidationError('Algebra has no recorded unit.')
        return self._unit

    def multiply(self, u: Element, v: Element) -> Element:
        """Return u v through the structure constants."""
        return table_product(self.table, u, v)


@dataclass(frozen=True)
class UnitizedAlgebra(CommutativeAlgebraABC):
    """The algebra Unit(V, f) on k + V with an optional scaling mu of the V product.

    Coordinate 0 is the adjoined unit, coordinates 1..dim_v are the basis of V. The product is
    (x0 y0 + f(x1, y1), x0 y1 + y0 x1 + mu x1.y1).

    Args:
        dim_v: The dimension of V.
        dot: The symmetric product on V keyed by (a, b), a <= b, over V indices 0..dim_v-1.
        form: The symmetric bilinear form f keyed by (a, b), a <= b.
        mu: The scaling of the V product.
    """

    dim_v: int
    dot: Table = field(repr=False)
    form: dict[tuple[int, int], Rational] = field(repr=False)
    mu: Rational = QQ.one

    @property
    def dim(self) -> int:
        """Return dim V + 1."""
        return self.dim_v + 1

    @property
    def unit(self) -> Element:
        """Return (1, 0)."""
        return {0: QQ.one}

    def v_product(self, u: Element, v: Element) -> Element:
        """Return u.v for elements of V (indices 0..dim_v-1)."""
        return table_product(self.dot, u, v)

    def form_value(self, u: Element, v: Element) -> Rational:
        """Return f(u, v) for elements of V."""
        total = QQ.zero
        for a, ua in u.items():
            for b, vb in v.items():
                value = self.form.get((a, b) if a <= b else (b, a))
                if value:
                    total += ua * vb * value
        return total

    @staticmethod
    def split(x: Element) -> tuple[Rational, Element]:
        """Return (x0, x1) for an element of k + V."""
        return x.get(0, QQ.zero), {k - 1: v for k, v in x.items() if k > 0}

    @staticmethod
    def join(x0, x1: Element) -> Element:
        """Return the k + V coordinates of (x0, x1)."""
        out = {k + 1: v for k, v in x1.items() if v != 0}
        if x0 != 0:
            out[0] = QQ(x0)
        return out

    def multiply(self, u: Element, v: Element) -> Element:
        """Return the Unit(V, f) product."""
        x0, x1 = self.split(u)
        y0, y1 = self.split(v)
        head = x0 * y0 + self.form_value(x1, y1)
        tail = add(scale(y1, x0), scale(x1, y0), scale(self.v_product(x1, y1), self.mu))
        return self.join(head, tail)

    def counit(self, x: Element) -> Rational:
        """Return the k-component, the counit of Unit(V, f)."""
        return x.get(0, QQ.zero)

    def tau(self, x: Element, y: Element) -> Rational:
        """Return counit(x y)."""
        return self.counit(self.multiply(x, y))


def make_unitized(dim_v: int, dot: Table, form, mu=1) -> UnitizedAlgebra:
    """Return a validated UnitizedAlgebra.

    Args:
        dim_v: The dimension of V.
        dot: The product on V; must be symmetric.
        form: The bilinear form as a {(a, b): value} dict or as a dense matrix; must be symmetric.
        mu: The scaling of the V product.
    """
    if isinstance(form, dict):
        pairs = form.items()
    else:
        if len(form) != dim_v or any(len(row) != dim_v for row in form):
            raise ValidationError(f'Form must be a {dim_v}x{dim_v} matrix.')
        pairs = (((a, b), form[a][b]) for a in range(dim_v) for b in range(dim_v))
    normalized: dict[tuple[int, int], Rational] = {}
    for (a, b), value in pairs:
        if not (0 <= a < dim_v and 0 <= b < dim_v):
            raise ValidationError(f'Form index ({a}, {b}) outside dimension {dim_v}.')
        key = (min(a, b), max(a, b))
        value = to_rational(value)
        if key in normalized and normalized[key] != value:
            raise ValidationError(f'Form is not symmetric at ({a}, {b}).')
        normalized[key] = value
    form_dict = {k: v for k, v in normalized.items() if v != 0}
    return UnitizedAlgebra(
        dim_v=dim_v,
        dot=_check_table(dim_v, dot, 'Product on V'),
        form=form_dict,
        mu=to_rational(mu),
    )


def unitize(U: UnitizedAlgebra) -> TableAlgebra:
    """Return the full multiplication table of Unit(V, f) on k + V with unit (1, 0)."""
    return TableAlgebra(U.dim, U.structure_constants(), unit=U.unit)


def scale_form(U: UnitizedAlgebra, c) -> UnitizedAlgebra:
    """Return Unit(V, c f) with the same product on V."""
    c = to_rational(c)
    form = {k: c * v for k, v in U.form.items() if c * v != 0}
    return UnitizedAlgebra(dim_v=U.dim_v, dot=U.dot, form=form, mu=U.mu)


def with_mu(U: UnitizedAlgebra, mu) -> UnitizedAlgebra:
    """Return Unit(V, f, mu): the V product scaled by mu."""
    return UnitizedAlgebra(dim_v=U.dim_v, dot=U.dot, form=U.form, mu=to_rational(mu))


def rescale_isomorphism(U: UnitizedAlgebra) -> tuple[UnitizedAlgebra, callable]:
    """Return Unit(V, mu^-2 f) and the isomorphism (x0, x1) -> (x0, mu x1) onto it.

    Args:
        U: An algebra Unit(V, f, mu) with mu nonzero.

    Returns:
        tuple: The target algebra with mu = 1 and the coordinate map.
    """
    if U.mu == 0:
        raise ValidationError('Rescaling requires a nonzero mu.')
    mu = U.mu
    target = with_mu(scale_form(U, 1 / (mu * mu)), 1)

    def phi(x: Element) -> Element:
        x0, x1 = U.split(x)
        return U.join(x0, scale(x1, mu))

    return target, phi


def pa1_residual(A: CommutativeAlgebraABC, a: Element) -> Element:
    """Return a(a(aa)) - (aa)(aa)."""
    return A.pa1_residual(a)


def jordan_residual(A: CommutativeAlgebraABC, x: Element, y: Element) -> Element:
    """Return x(x^2 y) - x^2(xy)."""
    return A.jordan_residual(x, y)


def jordan_commutator(A: CommutativeAlgebraABC, x: Element) -> DomainMatrix:
    """Return [M_x, M_{x^2}]."""
    return A.jordan_commutator(x)


@dataclass(frozen=True)
class Pa1Components:
    """The degree-4 residual of (0, a1) in Unit(V, c f) written as (c s, x + c y).

    Args:
        s: f(a1, a1 a1^2) - f(a1^2, a1^2).
        x: a1 (a1 a1^2) - a1^2 a1^2.
        y: f(a1, a1^2) a1 - f(a1, a1) a1^2.
    """

    s: Rational
    x: Element
    y: Element

    def residual(self, c) -> tuple[Rational, Element]:
        """Return the residual for the scaling c of the form."""
        return c * self.s, add(self.x, scale(self.y, c))

    def vanishes(self, c) -> bool:
        """Return True when the residual is zero for the scaling c."""
        head, tail = self.residual(c)
        return head == 0 and not tail


def pa1_components(U: UnitizedAlgebra, a1: Element) -> Pa1Components:
    """Return the c-decomposition of the degree-4 residual of (0, a1).

    The product on V is taken with the scaling mu of U.
    """
    square = scale(U.v_product(a1, a1), U.mu)
    cube = scale(U.v_product(a1, square), U.mu)
    s = U.form_value(a1, cube) - U.form_value(square, square)
    x = subtract(scale(U.v_product(a1, cube), U.mu), scale(U.v_product(square, square), U.mu))
    y = subtract(scale(a1, U.form_value(a1, square)), scale(square, U.form_value(a1, a1)))
    return Pa1Components(s=s, x=x, y=y)


@dataclass
class ScanResult:
    """Outcome of the uniqueness scan over candidate scalings of the form.

    Args:
        candidates: The scanned scalings.
        survivors: Candidates with no nonzero sampled residual.
        witnesses: For each eliminated candidate, the V element exposing it.
        status: "conclusive" when the hypotheses were confirmed on samples, else "inconclusive".
        reason: Explanation for an inconclusive status.
    """

    candidates: list
    survivors: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    status: str = 'conclusive'
    reason: str = ''

    def to_dict(self) -> dict:
        """Return a JSON ready dict with rationals as strings."""
        return {
            'candidates': [format_rational(c) for c in self.candidates],
            'survivors': [format_rational(c) for c in self.survivors],
            'witnesses': {
                format_rational(c): format_element(w) for c, w in self.witnesses.items()
            },
            'status': self.status,
            'reason': self.reason,
        }


def _independent(u: Element, v: Element) -> bool:
    """Return True when two sparse vectors are linearly independent."""
    basis = EchelonBasis()
    basis.add(u)
    return basis.add(v)


def unique_c_scan(
    U: UnitizedAlgebra, candidates: Sequence, samples: int = 20, seed: int = 0
) -> ScanResult:
    """Return the candidate scalings c for which Unit(V, c f) passes sampled degree-4 tests.

    At most one c can survive when f is not alternating and v, v.v are independent for some v.
    When the samples do not confirm those hypotheses the result is reported as inconclusive.

    Args:
        U: The algebra Unit(V, f).
        candidates: Rational scalings of f to test.
        samples: The number of seeded random elements of V.
        seed: The random seed.

    Returns:
        ScanResult: Survivors and the witnesses of eliminated candidates.
    """
    candidates = [to_rational(c) for c in candidates]
    result = ScanResult(candidates=candidates)
    if not candidates:
        return result

    rng = seeded_rng(seed, 'unique-c-scan')
    elements = [{k: QQ.one} for k in range(U.dim_v)]
    elements += [random_element(rng, U.dim_v) for _ in range(samples)]
    components = [(a1, pa1_components(U, a1)) for a1 in elements if a1]

    form_nonzero = any(U.form_value(a1, a1) != 0 for a1, _ in components)
    wedge_nonzero = any(_independent(a1, U.v_product(a1, a1)) for a1, _ in components)
    for c in candidates:
        for a1, comp in components:
            if not comp.vanishes(c):
                result.witnesses[c] = a1
                break
        else:
            result.survivors.append(c)

    if not form_nonzero or not wedge_nonzero:
        result.status = 'inconclusive'
        if not form_nonzero:
            result.reason = 'form vanishes on all samples'
        else:
            result.reason = 'v and v.v dependent on all samples'
        logger.warning(f'uniqueness scan inconclusive: {result.reason}')
    elif len(result.survivors) > 1:
        result.status = 'inconclusive'
        result.reason = f'{len(result.survivors)} candidates survived the samples'
        logger.warning(f'uniqueness scan inconclusive: {result.reason}')
    return result


def _enumerate_small_elements(dim: int, max_support: int) -> Iterable[Element]:
    """Yield elements with coordinates in WITNESS_VALUES by increasing support size."""
    for size in range(1, max_support + 1):
        for support in itertools.combinations(range(dim), size):
            for values in itertools.product(WITNESS_VALUES, repeat=size):
                if size > 1 and values[0] != 1:
                    # residual is homogeneous, so a leading coefficient of 1 suffices
                    continue
                yield {k: QQ(v) for k, v in zip(support, values)}


def find_pa1_witness(
    A: CommutativeAlgebraABC,
    max_support: int = 4,
    limit: int = 5000,
    samples: int = 200,
    seed: int = 0,
) -> Element | None:
    """Return an element a with a(a(aa)) != (aa)(aa), or None if the search finds none.

    Small-support elements are enumerated first, then seeded random elements are sampled.

    Args:
        A: The algebra.
        max_support: The largest support for the enumeration.
        limit: The number of enumerated elements to try.
        samples: The number of random elements to try afterwards.
        seed: The random seed.
    """
    for count, a in enumerate(_enumerate_small_elements(A.dim, max_support)):
        if count >= limit:
            break
        if A.pa1_residual(a):
            logger.debug(f'degree-4 witness found by enumeration after {count + 1} elements')
            return a
    rng = seeded_rng(seed, 'pa1-witness')
    for _ in range(samples):
        a = random_element(rng, A.dim)
        if a and A.pa1_residual(a):
            logger.debug('degree-4 witness found by sampling')
            return a
    logger.warning('no degree-4 power-associativity witness found')
    return None


def _flatten(m: DomainMatrix) -> dict[int, Rational]:
    ncols = m.shape[1]
    return {r * ncols + c: v for r, row in entries(m).items() for c, v in row.items()}


def ie_chain(
    A: CommutativeAlgebraABC,
    e_max: int,
    seed: int = 0,
    generators: int = 8,
    stall: int = 3,
    max_draws: int = 200,
) -> list[int]:
    """Return lower bounds for dim I_0 <= dim I_1 <= ... <= dim I_{e_max}.

    H_e is spanned by symmetrized words M_{a_1}...M_{a_e} in left multiplications by a fixed seeded
    set of generators; by polarization this is the span of M_b^e for b in the span of the
    generators. I_e = H_0 + ... + H_e. Each degree draws random b until `stall` consecutive draws
    leave the span unchanged.

    Args:
        A: A unital algebra.
        e_max: The degree bound.
        seed: The random seed.
        generators: The size of the seeded generator set.
        stall: Consecutive non-increasing draws that end a degree.
        max_draws: The maximum number of draws per degree.

    Returns:
        list: Weakly increasing dimensions, one per degree 0..e_max.
    """
    rng = seeded_rng(seed, 'ie-chain')
    gens = [random_element(rng, A.dim) for _ in range(generators)]
    span = EchelonBasis()
    span.add(_flatten(DomainMatrix.eye(A.dim, QQ).to_sparse()))
    dims = [len(span)]
    for e in range(1, e_max + 1):
        unchanged = 0
        for _ in range(max_draws):
            b: Element = {}
            for g in gens:
                axpy(b, g, random_rational(rng))
            word = A.left_multiplication(b) ** e
            if span.add(_flatten(word)):
                unchanged = 0
            else:
                unchanged += 1
                if unchanged >= stall:
                    break
        dims.append(len(span))
        logger.debug(f'ie chain degree {e}: dim {dims[-1]}')
    return dims


def trace_counit(A: CommutativeAlgebraABC) -> list[Rational]:
    """Return the canonical counit a -> Tr(M_a)/dim A on the basis."""
    values = []
    for a in range(A.dim):
        m = A.left_multiplication(A.basis_element(a))
        values.append(trace(m) / A.dim)
    return values


def associativity_defect_pairs(
    U: UnitizedAlgebra, triples: Iterable[tuple[Element, Element, Element]]
) -> list[tuple[Rational, Rational]]:
    """Return (tau defect, f defect) for each triple of elements of k + V.

    The tau defect is tau(x y, z) - tau(x, y z) in Unit(V, f); the f defect is
    f(x1.y1, z1) - f(x1, y1.z1) on the V components.
    """
    pairs = []
    for x, y, z in triples:
        tau_defect = U.tau(U.multiply(x, y), z) - U.tau(x, U.multiply(y, z))
        x1, y1, z1 = U.split(x)[1], U.split(y)[1], U.split(z)[1]
        f_defect = U.form_value(U.v_product(x1, y1), z1) - U.form_value(x1, U.v_product(y1, z1))
        pairs.append((tau_defect, f_defect))
    return pairs
