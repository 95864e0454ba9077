"""Shared utilities: errors, check results, control dicts and the rational text codec."""
# standard library
import random
from dataclasses import dataclass, field

# third-party
from sympy import QQ

Rational = type(QQ.one)

TOOL_VERSION = '0.0.1'


class ChevalleyAlgebraError(Exception):
    """Base error for the package."""


class ValidationError(ChevalleyAlgebraError, ValueError):
    """Invalid user input (types, weights, files, dimensions)."""


class ConsistencyError(ChevalleyAlgebraError):
    """An identity that must hold exactly has failed."""


def to_rational(value) -> Rational:
    """Return value as an exact rational in the QQ domain.

    Accepts ints, QQ elements, ``fractions.Fraction`` and strings of the form ``"p/q"`` or
    ``"p"``.

    Args:
        value: The value to convert.

    Returns:
        Rational: The QQ element.
    """
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, int):
        return QQ(value)
    if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
        return QQ(int(value.numerator), int(value.denominator))
    raise ValidationError(f'Cannot convert {value!r} to an exact rational.')


def parse_rational(text: str) -> Rational:
    """Parse a ``"p/q"`` (or ``"p"``) string into an exact rational.

    Args:
        text: The rational string.

    Returns:
        Rational: The QQ element.
    """
    try:
        if '/' in text:
            num, den = text.split('/', 1)
            if int(den) == 0:
                raise ZeroDivisionError
            return QQ(int(num), int(den))
        return QQ(int(text))
    except (ValueError, ZeroDivisionError) as ex:
        raise ValidationError(f'Malformed rational "{text}", expected "p/q".') from ex


def format_rational(value) -> str:
    """Return the ``"p/q"`` text of a rational (``"p"`` when the denominator is one)."""
    value = to_rational(value)
    num, den = int(value.numerator), int(value.denominator)
    if den == 1:
        return str(num)
    return f'{num}/{den}'


def format_element(u: dict) -> dict[str, str]:
    """Return a sparse vector with "p/q" values keyed by the index text, in index order."""
    return {str(k): format_rational(v) for k, v in sorted(u.items()) if v != 0}


def seeded_rng(seed: int, *salt: str) -> random.Random:
    """Return a deterministic generator for a seed and a purpose string.

    Distinct salts give independent streams so adding a check never shifts the samples of
    another one.
    """
    return random.Random(f'{seed}:' + ':'.join(salt))  # nosec


def random_rational(rng: random.Random, bound: int = 5) -> Rational:
    """Return a small random rational with numerator in [-bound, bound]."""
    return QQ(rng.randint(-bound, bound), rng.randint(1, bound))


def control_dict(defaults: dict, control: dict | None = None) -> dict:
    """Return a copy of defaults updated with user provided settings."""
    merged = dict(defaults)
    if control is not None:
        merged.update({k: v for k, v in control.items() if v is not None})
    return merged


PASS = 'pass'
FAIL = 'fail'
INCONCLUSIVE = 'inconclusive'
SKIPPED = 'skipped'


@dataclass
class CheckResult:
    """Outcome of one verification check.

    Args:
        name: The registered check name.
        status: One of pass, fail, inconclusive or skipped.
        detail: Summary data (counts, values) with rationals as "p/q" strings.
        witness: Exact data exposing a failure, or a found witness.
        seconds: Wall time of the check, shown in the text summary only.
    """

    name: str
    status: str = PASS
    detail: dict = field(default_factory=dict)
    witness: dict | None = None
    seconds: float = 0.0

    @property
    def failed(self) -> bool:
        """Return True for a failing check."""
        return self.status == FAIL

    def fail(self, witness: dict, **detail) -> 'CheckResult':
        """Mark the check failed with an exact witness."""
        self.status = FAIL
        self.witness = witness
        self.detail.update(detail)
        return self

    def skip(self, reason: str) -> 'CheckResult':
        """Mark the check skipped."""
        self.status = SKIPPED
        self.detail['reason'] = reason
        return self

    def to_dict(self) -> dict:
        """Return a JSON ready dict."""
        return {
            'name': self.name,
            'status': self.status,
            'detail': self.detail,
            'witness': self.witness,
        }
