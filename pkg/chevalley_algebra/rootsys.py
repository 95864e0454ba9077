"""Root systems of the split simple types A-G and the canonical inner product."""
# standard library
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property

# third-party
from sympy import QQ

# first-party
from chevalley_algebra.exactla import inverse, to_matrix, to_rows
from chevalley_algebra.utils import ConsistencyError, Rational, ValidationError, to_rational

logger = logging.getLogger(__name__)

Root = tuple[int, ...]

FAMILIES = 'ABCDEFG'

# (type, h_check, h, highest weight in fundamental-weight coordinates, dim L(lambda))
DUAL_COXETER_TABLE = (
    ('A2', 3, 3, (1, 1), 8),
    ('G2', 4, 6, (2, 0), 27),
    ('F4', 9, 12, (0, 0, 0, 2), 324),
    ('E6', 12, 12, (1, 0, 0, 0, 0, 1), 650),
    ('E7', 18, 18, (0, 0, 0, 0, 0, 1, 0), 1539),
    ('E8', 30, 30, (1, 0, 0, 0, 0, 0, 0, 0), 3875),
)


@dataclass(frozen=True)
class RootSystemSpec:
    """A family letter and rank.

    Args:
        family: One of A, B, C, D, E, F, G.
        rank: The rank of the root system.
    """

    family: str
    rank: int

    def __post_init__(self):
        """Validate the family/rank pair."""
        if self.family not in FAMILIES:
            raise ValidationError(f'Unknown family "{self.family}", expected one of {FAMILIES}.')
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValidationError(f'Rank must be a positive integer, got {self.rank!r}.')
        constraint = {
            'A': (self.rank >= 1, 'A requires rank >= 1'),
            'B': (self.rank >= 2, 'B requires rank >= 2'),
            'C': (self.rank >= 2, 'C requires rank >= 2'),
            'D': (self.rank >= 3, 'D requires rank >= 3'),
            'E': (self.rank in (6, 7, 8), 'E requires rank 6, 7 or 8'),
            'F': (self.rank == 4, 'F requires rank 4'),
            'G': (self.rank == 2, 'G requires rank 2'),
        }[self.family]
        if not constraint[0]:
            raise ValidationError(f'Inadmissible type {self.name}: {constraint[1]}.')

    @property
    def name(self) -> str:
        """Return the type string, e.g. G2."""
        return f'{self.family}{self.rank}'


def parse_type(text: str) -> RootSystemSpec:
    """Parse a type string such as "G2", "b3" or "E 6".

    Args:
        text: The type string.

    Returns:
        RootSystemSpec: The validated family/rank pair.
    """
    match = re.fullmatch(r'\s*([A-Ga-g])\s*_?\s*(\d+)\s*', text or '')
    if match is None:
        raise ValidationError(f'Malformed type "{text}", expected e.g. "A2" or "G2".')
    return RootSystemSpec(match.group(1).upper(), int(match.group(2)))


def _gram_matrix(spec: RootSystemSpec) -> list[list[int]]:
    """Return an integral Gram matrix of the simple roots (Bourbaki numbering).

    The matrix is only defined up to a positive scalar; the canonical normalization is applied
    in build_root_system.
    """
    n = spec.rank
    diag = [2] * n
    edges: dict[tuple[int, int], int] = {}
    if spec.family in 'ABC':
        edges = {(i, i + 1): -1 for i in range(n - 1)}
        if spec.family == 'B':
            diag[n - 1] = 1
        elif spec.family == 'C':
            diag[n - 1] = 4
            edges[(n - 2, n - 1)] = -2
    elif spec.family == 'D':
        edges = {(i, i + 1): -1 for i in range(n - 2)}
        edges[(n - 3, n - 1)] = -1
    elif spec.family == 'E':
        edges = {(0, 2): -1, (1, 3): -1}
        edges.update({(i, i + 1): -1 for i in range(2, n - 1)})
    elif spec.family == 'F':
        diag = [4, 4, 2, 2]
        edges = {(0, 1): -2, (1, 2): -2, (2, 3): -1}
    elif spec.family == 'G':
        diag = [2, 6]
        edges = {(0, 1): -3}

    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        gram[i][i] = diag[i]
    for (i, j), value in edges.items():
        gram[i][j] = gram[j][i] = value
    return gram


def _bilinear(gram, u, v) -> Rational:
    """Return u^T gram v."""
    return sum(
        (gram[i][j] * u[i] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]),
        QQ.zero,
    )


@dataclass(frozen=True)
class RootDatum:
    """Root system combinatorics of one simple type.

    Roots are integer vectors in simple-root coordinates; weights are rational vectors in
    fundamental-weight coordinates.
    """

    spec: RootSystemSpec
    cartan: tuple[tuple[int, ...], ...]
    roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    theta: Root
    theta_short: Root
    nu: dict[Root, int] = field(repr=False)
    nu_g: int
    h: int
    h_check: int
    delta: Root
    fund_weights: tuple[tuple[Rational, ...], ...] = field(repr=False)
    canonical_gram: tuple[tuple[Rational, ...], ...] = field(repr=False)
    root_gram: tuple[tuple[Rational, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        """Return the rank."""
        return self.spec.rank

    @property
    def name(self) -> str:
        """Return the type string."""
        return self.spec.name

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        """Return the simple roots as unit vectors."""
        return tuple(
            tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank)
        )

    @property
    def dim(self) -> int:
        """Return dim G = rank + number of roots."""
        return self.rank + len(self.roots)

    @cached_property
    def root_set(self) -> frozenset:
        """Return the roots as a set."""
        return frozenset(self.roots)

    def is_root(self, vector) -> bool:
        """Return True if vector (simple-root coordinates) is a root."""
        return tuple(vector) in self.root_set

    def inner(self, alpha, beta) -> Rational:
        """Return the canonical form on two vectors in simple-root coordinates."""
        return _bilinear(self.root_gram, alpha, beta)

    def pairing(self, alpha, beta) -> int:
        """Return <alpha, beta^vee> = 2<alpha,beta>/<beta,beta> for roots in root coordinates."""
        value = 2 * self.inner(alpha, beta) / self.inner(beta, beta)
        return int(value)

    def simple_pairing(self, alpha, i: int) -> int:
        """Return <alpha, alpha_i^vee> for a vector in simple-root coordinates."""
        return sum(alpha[j] * self.cartan[j][i] for j in range(self.rank))

    def coroot_coordinates(self, alpha: Root) -> tuple[int, ...]:
        """Return alpha^vee on the simple coroots."""
        norm = self.inner(alpha, alpha)
        coords = []
        for i in range(self.rank):
            value = alpha[i] * self.root_gram[i][i] / norm
            if value.denominator != 1:
                raise ConsistencyError(f'Non-integral coroot coordinates for {alpha}.')
            coords.append(int(value))
        return tuple(coords)

    def to_weight_coordinates(self, alpha) -> tuple[Rational, ...]:
        """Return a simple-root coordinate vector in fundamental-weight coordinates."""
        return tuple(
            sum((QQ(alpha[i]) * self.cartan[i][j] for i in range(self.rank)), QQ.zero)
            for j in range(self.rank)
        )

    def height(self, alpha: Root) -> int:
        """Return the height of a root."""
        return sum(alpha)

    def is_long(self, alpha: Root) -> bool:
        """Return True for long roots (all roots of simply-laced types are long)."""
        return self.nu[tuple(alpha)] == 1


def _positive_roots(cartan, rank: int) -> list[Root]:
    """Return the positive roots by root strings through the simple roots."""
    simple = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    found = set(simple)
    layer = list(simple)
    while layer:
        following = set()
        for beta in layer:
            for i in range(rank):
                q = 0
                gamma = list(beta)
                gamma[i] -= 1
                while tuple(gamma) in found:
                    q += 1
                    gamma[i] -= 1
                p = q - sum(beta[j] * cartan[j][i] for j in range(rank))
                if p > 0:
                    nxt = list(beta)
                    nxt[i] += 1
                    if tuple(nxt) not in found:
                        following.add(tuple(nxt))
        found.update(following)
        layer = sorted(following)
    return sorted(found, key=lambda r: (sum(r), r))


def build_root_system(spec: RootSystemSpec) -> RootDatum:
    """Return the root datum of an admissible family/rank pair.

    Roots are ordered by height, then lexicographically in simple-root coordinates.

    Args:
        spec: The family and rank.

    Returns:
        RootDatum: The root system with its canonical normalization.
    """
    n = spec.rank
    gram = _gram_matrix(spec)
    cartan = tuple(tuple(2 * gram[i][j] // gram[j][j] for j in range(n)) for i in range(n))

    positive = _positive_roots(cartan, n)
    roots = sorted(positive + [tuple(-c for c in r) for r in positive], key=lambda r: (sum(r), r))
    norms = {r: _bilinear(gram, r, r) for r in roots}
    long_norm = max(norms.values())
    nu = {r: int(long_norm / norm) for r, norm in norms.items()}
    nu_g = max(nu.values())

    theta = positive[-1]
    short = [r for r in positive if nu[r] == nu_g]
    theta_short = short[-1]
    h = len(roots) // n
    h_check = 1 + sum(theta[i] * QQ(gram[i][i]) / long_norm for i in range(n))
    if h_check.denominator != 1:
        raise ConsistencyError(f'Non-integral dual Coxeter number for {spec.name}.')
    h_check = int(h_check)

    # <alpha, alpha> = 1 / (nu_alpha * h_check)
    scale = 1 / (QQ(long_norm) * h_check)
    root_gram = tuple(tuple(scale * gram[i][j] for j in range(n)) for i in range(n))

    cartan_inverse = to_rows(inverse(to_matrix(cartan)))
    fund_weights = tuple(tuple(row) for row in cartan_inverse)
    canonical_gram = tuple(
        tuple(_bilinear(root_gram, fund_weights[i], fund_weights[j]) for j in range(n))
        for i in range(n)
    )
    delta = tuple(sum(r[i] for r in positive) for i in range(n))

    datum = RootDatum(
        spec=spec,
        cartan=cartan,
        roots=tuple(roots),
        positive_roots=tuple(positive),
        theta=theta,
        theta_short=theta_short,
        nu=nu,
        nu_g=nu_g,
        h=h,
        h_check=h_check,
        delta=delta,
        fund_weights=fund_weights,
        canonical_gram=canonical_gram,
        root_gram=root_gram,
    )
    logger.debug(f'{spec.name}: {len(roots)} roots, h={h}, h_check={h_check}, nu_G={nu_g}')
    return datum


def _weight(d: RootDatum, weight) -> tuple[Rational, ...]:
    """Return a weight as rationals after a dimension check."""
    if len(weight) != d.rank:
        raise ValidationError(
            f'Weight {tuple(weight)} has {len(weight)} entries, expected {d.rank}.'
        )
    return tuple(to_rational(w) for w in weight)


def _dominant(d: RootDatum, weight) -> tuple[Rational, ...]:
    """Return a weight after checking it is dominant integral."""
    weight = _weight(d, weight)
    if any(w < 0 or w.denominator != 1 for w in weight):
        raise ValidationError(f'Weight {weight} is not dominant integral.')
    return weight


def canonical_form(d: RootDatum, lam, mu) -> Rational:
    """Return <lam, mu> for weights in fundamental-weight coordinates.

    Args:
        d: The root datum.
        lam: A rational weight vector.
        mu: A rational weight vector.

    Returns:
        Rational: The canonical inner product.
    """
    return _bilinear(d.canonical_gram, _weight(d, lam), _weight(d, mu))


def delta_weight(d: RootDatum) -> tuple[Rational, ...]:
    """Return delta = 2 rho in fundamental-weight coordinates."""
    return tuple(QQ(2) for _ in range(d.rank))


def casimir_eigenvalue(d: RootDatum, lam) -> Rational:
    """Return <lam, lam + delta> for a dominant weight lam."""
    lam = _dominant(d, lam)
    shifted = tuple(a + b for a, b in zip(lam, delta_weight(d)))
    return canonical_form(d, lam, shifted)


def weyl_dim(d: RootDatum, lam) -> int:
    """Return the dimension of the irreducible representation of highest weight lam.

    Args:
        d: The root datum.
        lam: A dominant weight in fundamental-weight coordinates.

    Returns:
        int: prod over positive roots of <lam + rho, alpha> / <rho, alpha>.
    """
    lam = _dominant(d, lam)
    rho = tuple(QQ.one for _ in range(d.rank))
    shifted = tuple(a + b for a, b in zip(lam, rho))
    value = QQ.one
    for alpha in d.positive_roots:
        alpha_w = d.to_weight_coordinates(alpha)
        value *= canonical_form(d, shifted, alpha_w) / canonical_form(d, rho, alpha_w)
    if value.denominator != 1:
        raise ConsistencyError(f'Weyl dimension formula returned {value} for {lam}.')
    return int(value)


def theta_weight(d: RootDatum) -> tuple[Rational, ...]:
    """Return the highest root in fundamental-weight coordinates."""
    return d.to_weight_coordinates(d.theta)


def table_row(name: str) -> tuple | None:
    """Return the dual Coxeter table row for a type, or None when not listed."""
    for row in DUAL_COXETER_TABLE:
        if row[0] == name:
            return row
    return None


def classical_dimension(d: RootDatum) -> int:
    """Return binom(dim G + 1, 2) - weyl_dim(2 theta)."""
    two_theta = tuple(2 * w for w in theta_weight(d))
    return math.comb(d.dim + 1, 2) - weyl_dim(d, two_theta)


def predicted_dimension(d: RootDatum) -> int:
    """Return the predicted dim A(g): 1 + dim L(lambda) for tabulated types, else the formula."""
    row = table_row(d.name)
    if row is not None:
        return 1 + row[4]
    return classical_dimension(d)
