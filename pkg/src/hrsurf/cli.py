"""Create `hrsurf`_'s CLI with `typer`_.

.. include:: cli.md

.. note:: `typer`_ does not support `from __future__ import annotations` as of 2023-12-31

.. _hrsurf: https://hrsurf.readthedocs.io/
.. _typer: https://typer.tiangolo.com/
"""

import asyncio
import contextlib
import enum
import json
import logging
import math
import os
import typing
from fractions import Fraction
from pathlib import Path

import numpy as np
import pyspry
import rich
import typer
from rich.logging import RichHandler
from rich.markup import escape
from rich.table import Table

import hrsurf
from hrsurf import ambient, codec, export
from hrsurf.ambient import AmbientSpace, InitialCondition, ValueAt, unit_at
from hrsurf.errors import (
    HrsurfError,
    InvalidSpace,
    OutOfDomain,
    OutOfRange,
    ParameterOutOfRegime,
    SchemaError,
    UnsupportedCombination,
    UnsupportedExport,
)
from hrsurf.families import get_family
from hrsurf.profile import HypersurfaceModel, classify as classify_initial, default_initial
from hrsurf.settings import Defaults, JobConfig, Tolerances, section
from hrsurf.verify import verify_constancy, verify_model

try:
    from typing import Annotated, TypeAlias  # type: ignore[attr-defined,unused-ignore]
except ImportError:  # pragma: no cover
    from typing_extensions import Annotated, TypeAlias  # type: ignore[assignment,attr-defined,unused-ignore]


# ruff: noqa: PLR0913
# pylint: disable=redefined-outer-name,unused-argument,too-many-arguments,too-many-locals

__all__ = [
    'app',
    'constants',
    'construct',
    'classify',
    'verify',
    'export_profile',
    'sweep',
    'version',
    'main',
]

EXIT_VERIFY_FAILED = 1
EXIT_REGIME = 2
EXIT_USAGE = 64

LOG_ENV_VAR = 'HRSURF_LOG'
LOG_MISSING_SETTINGS_MESSAGE = "Could not find [bold blue]hrsurf[/]'s settings file"
LOG_VERBOSITY_MESSAGE = 'logging verbosity set to [green]%s[/green]'

logger = logging.getLogger(__name__)

app_kwargs: typing.Dict[str, typing.Any] = {
    'context_settings': {'help_option_names': ['-h', '--help']},
    'no_args_is_help': True,
    'rich_markup_mode': 'rich',
}

app = typer.Typer(**app_kwargs)
"""The root `typer`_ application.

.. _typer: https://typer.tiangolo.com/
"""


class TableFormat(str, enum.Enum):
    """Machine-readable formats for the `constants` table."""

    JSON = 'json'
    TOML = 'toml'
    YAML = 'yaml'


class ExportFormat(str, enum.Enum):
    """Artifact formats written by `export`."""

    CSV = 'csv'
    OBJ = 'obj'


def help_callback(ctx: typer.Context, value: typing.Optional[bool] = None) -> None:
    """Print the help message for the command."""
    if ctx.resilient_parsing:  # pragma: no cover
        return

    if value:
        rich.print(ctx.get_help())
        raise typer.Exit()


HelpAnnotation: TypeAlias = Annotated[
    typing.Optional[bool],
    typer.Option(
        '-h',
        '--help',
        callback=help_callback,
        rich_help_panel='Global',
        show_default=False,
        is_eager=True,
        help='Show this message and exit.',
    ),
]


def load_config(ctx: typer.Context, value: typing.Optional[Path]) -> None:
    """Load the settings file from the given path."""
    if ctx.resilient_parsing:  # pragma: no cover
        return

    ctx.ensure_object(dict)
    if not value and 'settings' in ctx.obj:
        logger.debug('already loaded settings')
        return

    try:
        settings_file = value or hrsurf.resolve_settings_path()
    except FileNotFoundError as exc:
        logger.warning(
            '%s%s',
            LOG_MISSING_SETTINGS_MESSAGE,
            (' at any of the following locations:\n  - ' + '\n  - '.join(f'{p}' for p in exc.args[1]))
            if len(exc.args) > 1
            else '',
            extra={'markup': True},
        )
        ctx.obj['settings'] = None

    else:
        ctx.obj['settings'] = hrsurf.load_settings(settings_file)


ConfigAnnotation: TypeAlias = Annotated[
    typing.Optional[Path],
    typer.Option(
        '-c',
        '--config',
        callback=load_config,
        help="Path to [bold blue]hrsurf[/]'s own settings file.",
        rich_help_panel='Global',
        show_default=False,
    ),
]


def configure_logging(ctx: typer.Context, verbose: typing.Optional[bool] = None) -> None:
    """Callback for the `--verbose` option to configure logging verbosity.

    By default, log messages at the level named by the `HRSURF_LOG` environment variable (or `logging.INFO`):

    >>> configure_logging(ctx)
    >>> caplog.messages
    ['logging verbosity set to [green]INFO[/green]']

    <!-- Clear the `caplog` fixture for the `doctest`, but exclude this from the docs
    >>> caplog.clear()

    -->
    When `verbose` is `True`, log messages at the `logging.DEBUG` level:

    >>> configure_logging(ctx, True)
    >>> caplog.messages
    ['logging verbosity set to [green]DEBUG[/green]']
    """
    if ctx.resilient_parsing:  # pragma: no cover  # this is for tab completions
        return

    verbosity = logging.getLevelName('DEBUG' if verbose else os.environ.get(LOG_ENV_VAR, 'INFO').upper())
    if not isinstance(verbosity, int):
        verbosity = logging.INFO

    logging.basicConfig(
        level=verbosity,
        format='%(message)s',
        force=True,
        datefmt='[%X]',
        handlers=[RichHandler(rich_tracebacks=True)],
    )
    logger.debug(LOG_VERBOSITY_MESSAGE, logging.getLevelName(verbosity), extra={'markup': True})


VerbosityAnnotation = Annotated[
    typing.Optional[bool],
    typer.Option(
        '-v',
        '--verbose',
        callback=configure_logging,
        rich_help_panel='Global',
        help='Log messages at the [black]DEBUG[/] level.',
        is_eager=True,
        show_default=False,
    ),
]


def version_callback(ctx: typer.Context, value: typing.Optional[bool] = None) -> None:
    """Print the version of the package."""
    if ctx.resilient_parsing:  # pragma: no cover  # this is for tab completions
        return

    if value:
        rich.print(hrsurf.__version__)
        raise typer.Exit()


VersionAnnotation = Annotated[
    typing.Optional[bool],
    typer.Option(
        '-V',
        '--version',
        callback=version_callback,
        rich_help_panel='Global',
        show_default=False,
        is_eager=True,
        help='Print the version and exit.',
    ),
]

SpaceAnnotation: TypeAlias = Annotated[
    str,
    typer.Option('-s', '--space', help='The ambient [yellow]hfm:<F>:<m>[/] or [yellow]sn:<n>[/].', show_default=False),
]
FamilyAnnotation: TypeAlias = Annotated[
    str,
    typer.Option('-f', '--family', help='[cyan]spheres[/], [cyan]horospheres[/] or [cyan]equidistants[/].'),
]
RAnnotation: TypeAlias = Annotated[
    int, typer.Option('-r', '--r', help='Which mean curvature is constant (1 <= r <= n).', show_default=False)
]
HrAnnotation: TypeAlias = Annotated[float, typer.Option('--hr', help='The constant value of H_r.', show_default=False)]
OptionalHrAnnotation: TypeAlias = Annotated[
    typing.Optional[float], typer.Option('--hr', help='The constant value of H_r.', show_default=False)
]
ScenarioAnnotation: TypeAlias = Annotated[
    str, typer.Option('--scenario', help='The construction to run, e.g. [cyan]sphere[/].', show_default=False)
]
LambdaAnnotation: TypeAlias = Annotated[
    typing.Optional[float],
    typer.Option('-l', '--lambda', help='Radius of the vertical-tangent leaf (or the free parameter).'),
]
AnchorAnnotation: TypeAlias = Annotated[
    typing.Optional[float], typer.Option('--anchor', help='Radius at which [italic]phi = 0[/].', show_default=False)
]
SamplesAnnotation: TypeAlias = Annotated[
    typing.Optional[int], typer.Option('--samples', help='Samples per profile piece.', show_default=False)
]
SMaxAnnotation: TypeAlias = Annotated[
    typing.Optional[float], typer.Option('--s-max', help='Truncation of unbounded profiles.', show_default=False)
]
TolAnnotation: TypeAlias = Annotated[
    typing.Optional[float], typer.Option('--tol', help='Allowed H_r residual (relative and absolute).')
]
OutAnnotation: TypeAlias = Annotated[
    typing.Optional[Path], typer.Option('-o', '--out', help='Write the output to this path.', show_default=False)
]
ProfileAnnotation: TypeAlias = Annotated[
    Path,
    typer.Argument(help='A profile written by [bold]construct[/].', exists=True, dir_okay=False, show_default=False),
]


@contextlib.contextmanager
def handle_errors() -> typing.Iterator[None]:
    """Print library errors within the managed context and exit with the matching code."""
    try:
        yield
    except (ParameterOutOfRegime, OutOfRange) as exc:
        rich.print(f'[red]ERROR[/]: {escape(str(exc))}')
        raise typer.Exit(EXIT_REGIME) from exc
    except (InvalidSpace, OutOfDomain, SchemaError, UnsupportedCombination, UnsupportedExport) as exc:
        rich.print(f'[red]ERROR[/]: {escape(str(exc))}')
        raise typer.Exit(EXIT_USAGE) from exc
    except HrsurfError as exc:
        rich.print(f'[red]ERROR[/]: {type(exc).__name__}: {escape(str(exc))}')
        raise typer.Exit(EXIT_VERIFY_FAILED) from exc


def _settings(ctx: typer.Context) -> typing.Optional[pyspry.Settings]:
    return typing.cast(typing.Optional[pyspry.Settings], (ctx.obj or {}).get('settings'))


def _write_profile(model: HypersurfaceModel, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(codec.dumps('json', codec.model_to_primitives(model)), encoding='utf-8')


def _read_profile(path: Path) -> HypersurfaceModel:
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except (UnicodeDecodeError, ValueError) as exc:
        rich.print(f'[red]ERROR[/]: [purple]{path}[/] is not valid JSON: {escape(str(exc))}')
        raise typer.Exit(EXIT_USAGE) from exc
    return codec.model_from_primitives(data)


def _summary(model: HypersurfaceModel) -> str:
    extras = [f'convexity={model.convexity}'] if model.convexity else []
    if model.period is not None:
        extras.append(f'period={model.period:.12g}')
    if model.slab is not None:
        extras.append(f'slab_halfwidth={model.slab:.12g}')
    return ' '.join([f'[green]{model.classification}[/]', *extras])


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             constants


def _double_factorial(k: int) -> int:
    return math.prod(range(k, 0, -2))


def sphere_integral_text(n: int) -> str:
    """Closed form of `S(n)` by Wallis' formula.

    >>> sphere_integral_text(3), sphere_integral_text(4)
    ('π/4', '2/3')
    """
    if n % 2:
        ratio = Fraction(_double_factorial(n - 2), 2 * _double_factorial(n - 1))
        numerator = '' if ratio.numerator == 1 else str(ratio.numerator)
        return f'{numerator}π/{ratio.denominator}'
    return str(Fraction(_double_factorial(n - 2), _double_factorial(n - 1)))


def constant_rows(
    space: AmbientSpace, r: int, target_hr: typing.Optional[float], tolerances: Tolerances
) -> typing.List[typing.Dict[str, typing.Any]]:
    """Tabulate the constants defined for `space`, `r`, and (optionally) `target_hr`.

    >>> [row['name'] for row in constant_rows(AmbientSpace.parse('hfm:R:3'), 1, None, Tolerances())]
    ['C_R(1)', 'H_1^0', 'C_1']
    """
    rows: typing.List[typing.Dict[str, typing.Any]] = []

    def add(name: str, exact: str, value: float) -> None:
        rows.append({'name': name, 'exact': exact, 'value': value if math.isfinite(value) else str(value)})

    if space.kind == 'hyperbolic':
        c_f = ambient.c_limit_exact(space, r)
        add(f'C_{space.field}({r})', str(c_f), float(c_f))
        h0 = ambient.horosphere_hr0(space, r)
        add(f'H_{r}^0', str(Fraction(h0)), h0)
    else:
        add(f'S({space.n})', sphere_integral_text(space.n), ambient.sphere_integral(space.n))

    if (space.kind == 'sphere' or space.field == 'R') and r < space.n:
        c_r = ambient.cr_constant(space.n, r)
        add(f'C_{r}', str(c_r), float(c_r))

    if target_hr is None:
        return rows

    with contextlib.suppress(OutOfRange, UnsupportedCombination):
        spheres = get_family('spheres', space)
        delta = ambient.delta_hr(spheres, r, target_hr, tolerances.bisection, tolerances.max_iterations)
        add(f'delta_{{H_{r}}}', '∞' if math.isinf(delta) else '', delta)
    if space.kind == 'hyperbolic' and space.field == 'R':
        with contextlib.suppress(OutOfRange):
            add(f's_{r}', '', ambient.s_r_constant(space.n, r, target_hr))
    return rows


@app.command()
def constants(
    ctx: typer.Context,
    space: SpaceAnnotation,
    r: RAnnotation,
    hr: OptionalHrAnnotation = None,
    fmt: Annotated[
        typing.Optional[TableFormat],
        typer.Option('--format', help='Print a machine-readable table instead.', show_default=False),
    ] = None,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Print the constants [italic]C_F(r)[/], [italic]C_r[/], [italic]S(n)[/], [italic]H_r^0[/], delta and s_r."""
    with handle_errors():
        ambient_space = AmbientSpace.parse(space)
        if not 1 <= r <= ambient_space.n:
            raise OutOfDomain(f'r must satisfy 1 <= r <= n={ambient_space.n}: {r}')
        tolerances = Tolerances.from_primitives(section(_settings(ctx), 'TOLERANCES'))
        rows = constant_rows(ambient_space, r, hr, tolerances)

    if fmt:
        data = {'space': str(ambient_space), 'r': r, 'constants': rows}
        if hr is not None:
            data['hr'] = hr
        typer.echo(codec.dumps(fmt.value, data), nl=False)
        return

    table = Table('constant', 'exact', 'decimal', title=f'{ambient_space}, r={r}')
    for row in rows:
        value = row['value']
        table.add_row(row['name'], row['exact'], value if isinstance(value, str) else f'{value:.12g}')
    rich.print(table)


# ⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯⎯
#                                             command definitions


@app.command()
def construct(
    ctx: typer.Context,
    space: SpaceAnnotation,
    r: RAnnotation,
    hr: HrAnnotation,
    scenario: ScenarioAnnotation,
    family: FamilyAnnotation = 'spheres',
    lam: LambdaAnnotation = None,
    anchor: AnchorAnnotation = None,
    samples: SamplesAnnotation = None,
    s_max: SMaxAnnotation = None,
    tol: TolAnnotation = None,
    out: OutAnnotation = None,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Construct a hypersurface and write its profile as JSON ([yellow]hrsurf-<scenario>.json[/] by default).

    The model is checked for constant [italic]H_r[/] before it is written; if the check fails, the profile is still
    written and the command exits [red]1[/].
    """
    job = JobConfig.resolve(
        _settings(ctx),
        space=space,
        family=family,
        r=r,
        hr=hr,
        scenario=scenario,
        lam=lam,
        anchor=anchor,
        samples=samples,
        s_max=s_max,
        tol=tol,
        out=out,
    )
    logger.debug('job: %s', job.describe())

    with handle_errors():
        model = job.build()
        report = verify_constancy(model, job.tolerances)

    path = job.out or Path(f'hrsurf-{scenario}.json')
    _write_profile(model, path)
    rich.print(f'{_summary(model)} -> {escape(str(path))}')
    if not report.passed:
        for check in report.failures:
            rich.print(f'[red]FAILED[/] {check.name}: {escape(check.detail)}')
        raise typer.Exit(EXIT_VERIFY_FAILED)


@app.command()
def classify(
    space: SpaceAnnotation,
    r: RAnnotation,
    hr: HrAnnotation,
    family: FamilyAnnotation = 'spheres',
    lam: LambdaAnnotation = None,
    tau0: Annotated[
        typing.Optional[float],
        typer.Option('--tau0', help='Start from [italic]tau(lambda) = tau0[/] instead of a vertical tangent.'),
    ] = None,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Print the label of the hypersurface generated by an initial condition, without integrating.

    Without [bold]--lambda[/] each family starts from its distinguished solution: regular at the origin for geodesic
    spheres, a vertical tangent on the horosphere, or the boundary case for equidistants. For r-minimal equidistants,
    [bold]--lambda[/] is the value [italic]tau(0)[/].
    """
    with handle_errors():
        isoparametric = get_family(family, AmbientSpace.parse(space))
        initial: InitialCondition
        if lam is None:
            initial = default_initial(isoparametric, r, hr)
        elif tau0 is not None:
            initial = ValueAt(lam, tau0)
        elif family == 'equidistants' and hr == 0:
            initial = ValueAt(0.0, lam)
        else:
            initial = unit_at(lam)
        result = classify_initial(isoparametric, r, hr, initial)

    suffix = f' ({result.convexity})' if result.convexity else ''
    rich.print(f'[green]{result.label}[/]{suffix}')


@app.command()
def verify(
    ctx: typer.Context,
    profile: ProfileAnnotation,
    tol: TolAnnotation = None,
    report: Annotated[
        typing.Optional[Path],
        typer.Option('--report', help='Write the JSON report here (default: next to the profile).'),
    ] = None,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Recompute [italic]H_r[/] along a profile and check it against the target; exit [red]1[/] on any failure."""
    tolerances = Tolerances.from_primitives(section(_settings(ctx), 'TOLERANCES')).with_residual(tol)
    with handle_errors():
        model = _read_profile(profile)
        result = verify_model(model, tolerances)

    table = Table('check', 'result', 'detail', title=escape(str(profile)))
    for check in result.checks:
        table.add_row(check.name, '[green]pass[/]' if check.passed else '[red]FAIL[/]', escape(check.detail))
    rich.print(table)

    path = report or profile.with_name(f'{profile.stem}.report.json')
    path.write_text(codec.dumps('json', codec.report_to_primitives(result)), encoding='utf-8')
    logger.debug('wrote report to %s', path)

    where = f' at s={result.residual_location:.6g}' if math.isfinite(result.residual_location) else ''
    rich.print(f'max H_r residual {result.max_hr_residual:.3e}{where}')
    if math.isfinite(result.sampled_location):
        rich.print(f"spline rho' residual {result.max_sampled_residual:.3e} at s={result.sampled_location:.6g}")
    if not result.passed:
        rich.print(f'[red]FAILED[/]: {", ".join(check.name for check in result.failures)}')
        raise typer.Exit(EXIT_VERIFY_FAILED)
    rich.print('[green]PASSED[/]')


@app.command(name='export')
def export_profile(
    ctx: typer.Context,
    profile: ProfileAnnotation,
    fmt: Annotated[ExportFormat, typer.Option('--format', help='The artifact format.')] = ExportFormat.CSV,
    out: OutAnnotation = None,
    azimuth: Annotated[
        typing.Optional[int], typer.Option('--azimuth', help='Azimuthal resolution of OBJ meshes.', show_default=False)
    ] = None,
    piece: Annotated[int, typer.Option('--piece', help='The profile piece written to CSV.')] = 0,
    audit: Annotated[
        bool, typer.Option('--audit', help='Print the vertex, edge and face counts of the mesh.', show_default=False)
    ] = False,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Write a profile as CSV, or its surface of revolution as an OBJ mesh."""
    defaults = Defaults.from_primitives(section(_settings(ctx), 'DEFAULTS'))
    with handle_errors():
        model = _read_profile(profile)
        if fmt == ExportFormat.OBJ:
            text = export.to_obj(model, azimuth or defaults.azimuth)
        else:
            text = export.to_csv(model, piece)

    if out:
        out.write_text(text, encoding='utf-8', newline='')
        rich.print(f'wrote [purple]{escape(str(out))}[/]')
    else:
        typer.echo(text, nl=False)

    if audit and fmt == ExportFormat.OBJ:
        stats = export.mesh_audit(text)
        rich.print(
            f'V={stats.vertices} E={stats.edges} F={stats.faces} '
            f'euler={stats.euler} min_area={stats.min_area:.3e}'
        )


class Outcome(typing.NamedTuple):
    """The result of one `sweep` job."""

    job: JobConfig
    result: str
    regime_failed: bool = False


def run_job(job: JobConfig) -> Outcome:
    """Construct one job, writing its profile when the job names an output path."""
    try:
        model = job.build()
    except (ParameterOutOfRegime, OutOfRange) as exc:
        return Outcome(job, f'[yellow]{escape(str(exc))}[/]', regime_failed=True)
    except HrsurfError as exc:
        return Outcome(job, f'[red]{type(exc).__name__}[/]: {escape(str(exc))}')

    if job.out:
        _write_profile(model, job.out)
    return Outcome(job, _summary(model))


async def run_all(jobs: typing.List[JobConfig]) -> typing.List[Outcome]:
    """Run the given (independent) jobs concurrently in the default executor."""
    loop = asyncio.get_running_loop()
    return list(await asyncio.gather(*[loop.run_in_executor(None, run_job, job) for job in jobs]))


@app.command()
def sweep(
    ctx: typer.Context,
    space: Annotated[
        typing.Optional[str], typer.Option('-s', '--space', help='The ambient space of the grid.', show_default=False)
    ] = None,
    r: Annotated[typing.Optional[int], typer.Option('-r', '--r', help='r for the grid.', show_default=False)] = None,
    scenario: Annotated[
        typing.Optional[str], typer.Option('--scenario', help='The construction to run.', show_default=False)
    ] = None,
    family: FamilyAnnotation = 'spheres',
    lam: LambdaAnnotation = None,
    hr_from: Annotated[typing.Optional[float], typer.Option('--hr-from', help='First H_r of the grid.')] = None,
    hr_to: Annotated[typing.Optional[float], typer.Option('--hr-to', help='Last H_r of the grid.')] = None,
    steps: Annotated[int, typer.Option('--steps', help='Number of H_r values in the grid.')] = 10,
    strict: Annotated[
        bool, typer.Option('--strict', help='Exit [red]2[/] if any job is outside its regime.', show_default=False)
    ] = False,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Construct a grid of jobs over [italic]H_r[/] (or the settings file's [yellow]JOBS[/]) concurrently."""
    settings = _settings(ctx)
    grid = (space, r, scenario, hr_from, hr_to)
    if all(value is not None for value in grid):
        jobs = [
            JobConfig.resolve(settings, space=space, family=family, r=r, hr=float(h), scenario=scenario, lam=lam)
            for h in np.linspace(typing.cast(float, hr_from), typing.cast(float, hr_to), steps)
        ]
    elif any(value is not None for value in grid):
        rich.print('[red]ERROR[/]: a grid needs --space, --r, --scenario, --hr-from and --hr-to')
        raise typer.Exit(EXIT_USAGE)
    else:
        entries = section(settings, 'JOBS')
        if not entries:
            rich.print('[red]ERROR[/]: no grid given, and the settings file defines no [yellow]JOBS[/]')
            raise typer.Exit(EXIT_USAGE)
        jobs = [JobConfig.from_primitives(entry, settings) for entry in entries.values()]

    logger.debug('running %d jobs', len(jobs))
    outcomes = asyncio.run(run_all(jobs))

    table = Table('job', 'result', title='sweep')
    for outcome in outcomes:
        table.add_row(escape(outcome.job.describe()), outcome.result)
    rich.print(table)

    if strict and any(outcome.regime_failed for outcome in outcomes):
        raise typer.Exit(EXIT_REGIME)


@app.command()
def version(
    ctx: typer.Context,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Print the version and exit."""
    version_callback(ctx, True)


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    get_help: HelpAnnotation = None,
    config: ConfigAnnotation = None,
    verbose: VerbosityAnnotation = None,
    version: VersionAnnotation = None,
) -> None:
    """Construct and verify hypersurfaces with constant r-th mean curvature in [italic]M x R[/]."""
    ctx.ensure_object(dict)

    if not ctx.invoked_subcommand:  # pragma: no cover
        rich.print(ctx.get_help())


logger.debug('successfully imported %s', __name__)
