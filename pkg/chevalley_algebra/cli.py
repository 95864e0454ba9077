"""Command line interface: build, verify, scan and report on A(g)."""
# standard library
import functools
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

# third-party
import click
from sympy import QQ

# first-party
from chevalley_algebra.algcore import AlgebraTable, build_algebra, canonical_counit, split_by_counit
from chevalley_algebra.chevalley import build_chevalley
from chevalley_algebra.construction2 import load_rep, natural_rep_sl3, rep_to_dict, save_rep
from chevalley_algebra.rootsys import RootSystemSpec, build_root_system, parse_type
from chevalley_algebra.unitize import TableAlgebra, ie_chain, make_unitized, unique_c_scan
from chevalley_algebra.utils import (
    TOOL_VERSION,
    ConsistencyError,
    ValidationError,
    format_rational,
    parse_rational,
)
from chevalley_algebra.verify import JORDAN_TYPES, VerificationSuite, peirce_data

logger = logging.getLogger(__name__)

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSISTENCY = 3

SUPPORTED_TYPES = 'A1-A4, B2-B4, C2-C4, D3-D4, G2, F4 (E6 with --allow-e6)'


@dataclass(frozen=True)
class RunConfig:
    """Settings of one command run.

    Args:
        type_name: The Lie type string.
        command: The command name.
        seed: The seed recorded in every artifact.
        samples: The sample count for sampled checks.
        output: The output path, "-" for stdout.
        exhaustive: Force exhaustive checks.
        threads: Worker processes for the table fill.
        allow_e6: Open the E6 gate.
        progress: Show progress bars.
    """

    type_name: str
    command: str
    seed: int = 0
    samples: int = 20
    output: str | None = None
    exhaustive: bool = False
    threads: int = 1
    allow_e6: bool = False
    progress: bool = False

    @property
    def spec(self) -> RootSystemSpec:
        """Return the gated type."""
        return gate_type(parse_type(self.type_name), self.allow_e6)

    def metadata(self, t: AlgebraTable) -> dict:
        """Return the metadata block of an artifact."""
        d = t.lie.datum
        return {
            'type': d.name,
            'rank': d.rank,
            'h': d.h,
            'hCheck': d.h_check,
            'dimG': t.lie.dim,
            'dimA': t.dim_a,
            'seed': self.seed,
            'version': TOOL_VERSION,
        }


def gate_type(spec: RootSystemSpec, allow_e6: bool = False) -> RootSystemSpec:
    """Return spec if its algebra fits desk-scale exact computation.

    Raises:
        ValidationError: For types outside the supported list.
    """
    family, rank = spec.family, spec.rank
    if family in 'ABCD' and rank <= 4 or family in 'FG':
        return spec
    if spec.name == 'E6':
        if allow_e6:
            return spec
        raise ValidationError('E6 is large (dim A = 651); pass --allow-e6 to build it.')
    raise ValidationError(
        f'{spec.name} exceeds desk-scale capacity for exact builds; supported: {SUPPORTED_TYPES}.'
    )


def build_table(config: RunConfig) -> AlgebraTable:
    """Return the completed algebra table for the configured type."""
    datum = build_root_system(config.spec)
    lie = build_chevalley(datum)
    return build_algebra(lie, threads=config.threads, progress=config.progress)


def table_document(t: AlgebraTable, config: RunConfig) -> dict:
    """Return the structure-constant JSON document of a table."""
    names = t.lie.labels
    prod_const = [
        [a, b, k, format_rational(value)]
        for (a, b), product in sorted(t.prod_const.items())
        for k, value in sorted(product.items())
    ]
    return {
        'metadata': config.metadata(t),
        'basisPairs': [[i, j] for i, j in t.basis_pairs],
        'basisLabels': [f'{names[i]}*{names[j]}' for i, j in t.basis_pairs],
        'dimA': t.dim_a,
        'prodConst': prod_const,
        'epsilon': [format_rational(v) for v in t.epsilon],
        'tauGram': [[format_rational(v) for v in row] for row in t.tau_gram],
        'unit': [format_rational(t.unit_coords.get(a, QQ.zero)) for a in range(t.dim_a)],
        'canonicalCounit': [format_rational(v) for v in canonical_counit(t)],
    }


def table_from_document(data: dict) -> tuple[TableAlgebra, tuple]:
    """Return the algebra and its counit from a structure-constant JSON document.

    Raises:
        ValidationError: On a malformed document.
    """
    try:
        dim = int(data['dimA'])
        table: dict = {}
        for a, b, k, value in data['prodConst']:
            table.setdefault((int(a), int(b)), {})[int(k)] = parse_rational(str(value))
        unit = {a: parse_rational(str(v)) for a, v in enumerate(data['unit'])}
        epsilon = tuple(parse_rational(str(v)) for v in data['epsilon'])
    except (KeyError, TypeError, ValueError) as ex:
        raise ValidationError(f'Malformed structure-constant document: {ex}.') from ex
    if len(epsilon) != dim or len(unit) != dim:
        raise ValidationError(f'Unit and counit must have {dim} entries.')
    unit = {a: v for a, v in unit.items() if v != 0}
    return TableAlgebra(dim, table, unit=unit), epsilon


def unitized_from_document(data: dict):
    """Return Unit(V, f) from a build document (split by its counit) or a V-table document."""
    if 'prodConst' in data:
        algebra, epsilon = table_from_document(data)
        return split_by_counit(algebra, algebra.unit, epsilon).algebra
    try:
        dim_v = int(data['dimV'])
        dot: dict = {}
        for a, b, k, value in data.get('dot', []):
            dot.setdefault((int(a), int(b)), {})[int(k)] = parse_rational(str(value))
        form = {(int(a), int(b)): parse_rational(str(v)) for a, b, v in data.get('form', [])}
        mu = parse_rational(str(data.get('mu', '1')))
    except (KeyError, TypeError, ValueError) as ex:
        raise ValidationError(f'Malformed V-table document: {ex}.') from ex
    return make_unitized(dim_v, dot, form, mu)


def parse_candidates(text: str) -> list:
    """Return the rationals of a comma separated list."""
    return [parse_rational(item.strip()) for item in (text or '').split(',') if item.strip()]


def emit(text: str, output: str | None):
    """Write text to a file, or to stdout for "-" or None."""
    if output in (None, '-'):
        click.echo(text)
    else:
        Path(output).write_text(text + '\n', encoding='utf-8')


def read_json(path: str) -> dict:
    """Return a parsed JSON document."""
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as ex:
        raise ValidationError(f'Cannot read {path}: {ex}.') from ex


def exit_codes(func):
    """Map library errors to exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as ex:
            click.echo(f'error: {ex}', err=True)
            sys.exit(EXIT_USAGE)
        except ConsistencyError as ex:
            click.echo(f'consistency error: {ex}', err=True)
            sys.exit(EXIT_CONSISTENCY)

    return wrapper


def type_options(func):
    """Options shared by every command that builds an algebra."""
    options = [
        click.option('--type', 'type_name', required=True, help='Lie type, e.g. A2 or G2.'),
        click.option(
            '--seed', type=int, default=0, envvar='CHEVALLEY_SEED', show_default=True,
            help='Seed recorded in every artifact.',
        ),
        click.option(
            '--threads', type=click.IntRange(min=1), default=lambda: os.cpu_count() or 1,
            envvar='CHEVALLEY_THREADS', help='Worker processes for the table fill.',
        ),
        click.option(
            '--allow-e6', is_flag=True, envvar='CHEVALLEY_ALLOW_E6', help='Permit building E6.'
        ),
        click.option('--progress', is_flag=True, help='Show progress bars.'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.version_option(TOOL_VERSION)
@click.option('-v', '--verbose', count=True, help='-v for info, -vv for debug logging.')
def cli(verbose: int):
    """Exact structure constants and verification of the algebra A(g)."""
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s', force=True
    )


@cli.command()
@type_options
@click.option('--out', 'output', default=None, help='Output path ("-" for stdout).')
@exit_codes
def build(type_name, seed, threads, allow_e6, progress, output):
    """Build A(g) and write its structure constants as JSON."""
    config = RunConfig(
        type_name, 'build', seed=seed, output=output, threads=threads, allow_e6=allow_e6,
        progress=progress,
    )
    t = build_table(config)
    target = output or f'A_{t.lie.name}.json'
    emit(json.dumps(table_document(t, config), indent=2), target)
    if target != '-':
        click.echo(f'wrote A({t.lie.name}), dim {t.dim_a}, to {target}', err=True)


@cli.command()
@type_options
@click.option(
    '--samples', type=click.IntRange(min=1), default=20, envvar='CHEVALLEY_SAMPLES',
    show_default=True, help='Samples for sampled checks.',
)
@click.option(
    '--trials', type=click.IntRange(min=1), default=None,
    help='Simplicity trials [default: 20, or 1 when dim A exceeds the exhaustive threshold].',
)
@click.option('--exhaustive', is_flag=True, help='Check all basis triples regardless of dim A.')
@click.option('--rep', 'rep_path', default=None, help='Representation JSON for sigma checks.')
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report.')
@click.option('--out', 'output', default=None, help='Also write the JSON report to this path.')
@exit_codes
def verify(
    type_name, seed, threads, allow_e6, progress, samples, trials, exhaustive, rep_path, as_json,
    output,
):
    """Run the verification suite; exit 1 if any check fails."""
    config = RunConfig(
        type_name, 'verify', seed=seed, samples=samples, output=output, exhaustive=exhaustive,
        threads=threads, allow_e6=allow_e6, progress=progress,
    )
    t = build_table(config)
    rep = load_rep(rep_path, t.lie) if rep_path else None
    suite = VerificationSuite(
        t,
        rep=rep,
        verify_control={
            'seed': seed,
            'samples': samples,
            'trials': trials,
            'exhaustive': exhaustive,
        },
    )
    report = suite.run(progress=progress)
    document = report.to_dict()
    document['metadata'] = config.metadata(t)
    if output:
        emit(json.dumps(document, indent=2), output)
    click.echo(json.dumps(document, indent=2) if as_json else report.to_text())
    if report.failed:
        sys.exit(EXIT_CHECK_FAILED)


@cli.command('unitize-scan')
@click.argument('input_path', type=click.Path(exists=True, dir_okay=False))
@click.option('--candidates', default='', help='Comma separated scalings, e.g. "0,1/2,1".')
@click.option(
    '--samples', type=click.IntRange(min=0), default=20, envvar='CHEVALLEY_SAMPLES',
    show_default=True,
)
@click.option('--seed', type=int, default=0, envvar='CHEVALLEY_SEED', show_default=True)
@click.option('--out', 'output', default=None, help='Output path ("-" or unset for stdout).')
@exit_codes
def unitize_scan(input_path, candidates, samples, seed, output):
    """Scan scalings c of the form for which Unit(V, c f) passes degree-4 tests."""
    U = unitized_from_document(read_json(input_path))
    result = unique_c_scan(U, parse_candidates(candidates), samples=samples, seed=seed)
    document = {'dimV': U.dim_v, 'seed': seed, 'samples': samples, **result.to_dict()}
    emit(json.dumps(document, indent=2), output)


@cli.command()
@type_options
@click.option('--count', type=click.IntRange(min=0), default=10, show_default=True)
@click.option('--json', 'as_json', is_flag=True, help='Print the JSON report.')
@click.option('--out', 'output', default=None, help='Also write the JSON report to this path.')
@exit_codes
def peirce(type_name, seed, threads, allow_e6, progress, count, as_json, output):
    """Report lambda_H for seeded Cartan idempotents u_H."""
    config = RunConfig(
        type_name, 'peirce', seed=seed, threads=threads, allow_e6=allow_e6, progress=progress
    )
    if config.spec.name in JORDAN_TYPES:
        raise ValidationError(
            f'A({config.spec.name}) is a Jordan algebra; its Peirce spectrum is {{0, 1/2, 1}}.'
        )
    t = build_table(config)
    data = peirce_data(t, count, seed=seed)
    distinct = sorted({format_rational(v) for v in data['lambdas']})
    document = {
        'metadata': config.metadata(t),
        'gamma': data['gamma'],
        'samples': data['samples'],
        'distinct': distinct,
        'failure': data['failure'],
    }
    if output:
        emit(json.dumps(document, indent=2), output)
    if as_json:
        click.echo(json.dumps(document, indent=2))
    else:
        click.echo(f'A({t.lie.name}), gamma {data["gamma"]}, seed {seed}')
        for sample in data['samples']:
            line = f'  H={sample["h"]} lambda={sample["lambda"]}'
            if 'eigenvalues' in sample:
                line += ' eigenvalues ' + ', '.join(
                    f'{k}^{m}' for k, m in sample['eigenvalues'].items()
                )
            click.echo(line)
        click.echo(f'distinct lambda: {len(distinct)}')
    if data['failure'] is not None or (count >= 3 and len(distinct) < 3):
        sys.exit(EXIT_CHECK_FAILED)


@cli.command()
@type_options
@click.option('--degree', type=click.IntRange(min=0), default=7, show_default=True)
@exit_codes
def chain(type_name, seed, threads, allow_e6, progress, degree):
    """Print lower bounds for the chain dim I_0 <= dim I_1 <= ... of multiplication spans."""
    config = RunConfig(
        type_name, 'chain', seed=seed, threads=threads, allow_e6=allow_e6, progress=progress
    )
    t = build_table(config)
    dims = ie_chain(t, degree, seed=seed)
    click.echo(json.dumps({'metadata': config.metadata(t), 'dims': dims}, indent=2))


@cli.command()
@click.option('--out', 'output', default=None, help='Output path ("-" or unset for stdout).')
@exit_codes
def rep(output):
    """Write the natural 3-dimensional representation of A2 as representation JSON."""
    lie = build_chevalley(build_root_system(parse_type('A2')))
    natural = natural_rep_sl3(lie)
    if output in (None, '-'):
        click.echo(json.dumps(rep_to_dict(natural), indent=2))
    else:
        save_rep(natural, output)
