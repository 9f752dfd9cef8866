"""
Command-line interface.

    mspace classify FILE            block decomposition of a maximal space
    mspace check FILE               trivial spectrum, total intransitivity, irreducibility
    mspace similar A B              similarity of two maximal spaces
    mspace equiv A B                equivalence of two affine spaces
    mspace construct KIND           write a model space as .mspace text
    mspace verify SUITE [SUITE...]  run verification suites (`all` for every one)

Exit codes: 0 when the decision is true or every suite passed, 1 when it is
false or a suite failed, 2 on a usage or input error.
"""

import logging
import sys
import time
from dataclasses import dataclass, field as dataclass_field, replace
from typing import Any, Dict, List, Optional, Sequence

import click
from rich.console import Console
from rich.table import Table
from rich.text import Text

from src import __version__
from src.core.errors import MSpaceError, ParseError
from src.core.schema import (
    decomposition_to_dict,
    describe_vector,
    matrix_to_json,
    report_passed,
    spectrum_report_to_dict,
    suite_report_to_json,
)
from src.classify.affine import DEFAULT_SAMPLING_ATTEMPTS, affine_equivalent, affine_normalize
from src.classify.decompose import block_lines, classify as classify_space, similar_spaces
from src.cli.mspace_file import parse_field, read_mspace, serialize_mspace
from src.forms.similarity import CONGRUENCE_MAX_ORDER, CONGRUENCE_MAX_SIZE
from src.linalg.enumeration import EnumerationPolicy
from src.linalg.field import FieldDesc
from src.linalg.matrix import Matrix
from src.linalg.subspace import AffineSpace, MatrixSubspace
from src.spaces.construct import (
    VeeSpec,
    affine_translate,
    alt_space,
    companion_line,
    model_space,
    nt_space,
    p_alt,
)
from src.spaces.spectrum import spectrum_report
from src.suites.runner import run_suites
from src.suites.suite_loader import get_available_suites, parse_suite_string, validate_suite_combination
from src.suites.suite_schema import get_suite_info
from src.utils.config import (
    build_policy,
    get_affine_config,
    get_congruence_config,
    get_export_config,
    get_logging_config,
    load_config,
)
from src.utils.export import dumps_report, export_reports
from src.utils.logger import setup_logger
from src.utils.parallel import worker_pool

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

MAX_LISTED_FAILURES = 10


@dataclass(frozen=True)
class CliSettings:
    """Global flags; a subcommand's own flags take precedence."""

    as_json: bool = False
    seed: Optional[int] = None
    samples: Optional[int] = None
    jobs: Optional[int] = None
    force: bool = False
    config_path: Optional[str] = None

    def merged(self, **flags) -> "CliSettings":
        values = {}
        for key, value in flags.items():
            if isinstance(value, bool):
                values[key] = value or getattr(self, key)
            elif value is not None:
                values[key] = value
        return replace(self, **values)


@dataclass
class Runtime:
    """Everything a command needs once flags and config are resolved."""

    settings: CliSettings
    config: Dict[str, Any]
    policy: EnumerationPolicy
    logger: logging.Logger
    console: Console = dataclass_field(default_factory=lambda: Console(highlight=False, markup=False, soft_wrap=True))

    @property
    def seed(self) -> int:
        if self.settings.seed is not None:
            return self.settings.seed
        return int(self.config.get("sampling", {}).get("seed", 0))

    @property
    def sampling_attempts(self) -> int:
        return int(get_affine_config(self.config).get("max_sampling_attempts", DEFAULT_SAMPLING_ATTEMPTS))

    def emit_json(self, data: Any) -> None:
        click.echo(dumps_report(data), nl=False)


def common_options(func):
    """Flags accepted both before and after the subcommand name."""
    options = [
        click.option("--json", "as_json", is_flag=True, help="Machine-readable output"),
        click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Sampling seed"),
        click.option("--samples", type=click.IntRange(min=0), default=None, help="Samples per sampled suite"),
        click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker processes for enumeration"),
        click.option("--force", is_flag=True, help="Override the enumeration guardrail"),
        click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
                     help="Path to config.yaml"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _runtime(ctx: click.Context, **flags) -> Runtime:
    settings = (ctx.obj or CliSettings()).merged(**flags)
    config = load_config(settings.config_path)
    logger = setup_logger(**get_logging_config(config))
    policy = build_policy(config, jobs=settings.jobs, force=settings.force or None)
    logger.debug(f"Policy: jobs={policy.jobs} force={policy.force} max_bits={policy.max_bits}")
    return Runtime(settings, config, policy, logger)


def _exit_code(decision: bool) -> int:
    return EXIT_TRUE if decision else EXIT_FALSE


def _linear(rt: Runtime, space, path: str) -> MatrixSubspace:
    """Linear spaces pass through; an affine space is replaced by its normalization."""
    if isinstance(space, AffineSpace):
        rt.logger.info(f"{path}: normalizing affine space")
        return affine_normalize(space, rt.policy, rt.seed, rt.sampling_attempts)
    return space


def _print_matrix(console: Console, m: Matrix, indent: str = "    ") -> None:
    width = max(len(m.field.format(x)) for x in m.entries)
    for i in range(m.rows):
        console.print(indent + " ".join(m.field.format(x).rjust(width) for x in m.row(i)))


@click.group()
@common_options
@click.version_option(version=__version__, prog_name="mspace")
@click.pass_context
def cli(ctx, **flags):
    """Exact classification of matrix spaces with trivial spectrum."""
    ctx.obj = CliSettings().merged(**flags)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def classify(ctx, path, **flags):
    """Decompose a maximal trivial-spectrum space into P_k·Alt blocks."""
    rt = _runtime(ctx, **flags)
    with worker_pool(rt.policy.jobs):
        space = _linear(rt, read_mspace(path), path)
        decomposition = classify_space(space, rt.policy)
    lines = block_lines(decomposition)

    if rt.settings.as_json:
        data = decomposition_to_dict(decomposition)
        data["block_lines"] = [matrix_to_json(m) for m in lines]
        rt.emit_json(data)
    else:
        console = rt.console
        console.print(Text(f"{path}: {space}", style="bold"))
        console.print(f"  blocks: {list(decomposition.sizes)}")
        for k, (size, gram) in enumerate(decomposition.blocks, start=1):
            console.print(f"  block {k} (size {size}), Gram matrix:")
            _print_matrix(console, gram)
        for k, line in enumerate(lines, start=1):
            console.print(f"  block line {k} (P·K, no eigenvalue in {space.field}):")
            _print_matrix(console, line)
        console.print("  basis change S (S^-1·V·S is the model):")
        _print_matrix(console, decomposition.basis_change)
        console.print(f"  verified: {decomposition.verified}")
    return _exit_code(decomposition.verified)


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--no-irreducibility", is_flag=True, help="Skip the invariant-subspace search")
@common_options
@click.pass_context
def check(ctx, path, no_irreducibility, **flags):
    """Trivial spectrum (exit 0) or an eigenvector witness (exit 1)."""
    rt = _runtime(ctx, **flags)
    with worker_pool(rt.policy.jobs):
        space = _linear(rt, read_mspace(path), path)
        report = spectrum_report(space, rt.policy, irreducibility=not no_irreducibility)

    if rt.settings.as_json:
        rt.emit_json(spectrum_report_to_dict(report, space))
    else:
        console = rt.console
        console.print(Text(f"{path}: {space}", style="bold"))
        console.print(f"  trivial spectrum:      {report.trivial_spectrum}")
        if report.witness is not None:
            x, m = report.witness
            console.print(f"  witness: M·X = X for X = {describe_vector(space.field, x)} and M =")
            _print_matrix(console, m)
        console.print(f"  totally intransitive:  {report.totally_intransitive}")
        console.print(f"  maximal:               {report.maximal}")
        if report.irreducible is not None:
            console.print(f"  irreducible:           {report.irreducible}")
    return _exit_code(report.trivial_spectrum)


def _read_linear_pair(path_a: str, path_b: str) -> List[MatrixSubspace]:
    spaces = [read_mspace(path_a), read_mspace(path_b)]
    for path, space in zip((path_a, path_b), spaces):
        if isinstance(space, AffineSpace):
            raise click.UsageError(f"{path} holds an affine space; use 'mspace equiv' for affine spaces")
    return spaces


@cli.command()
@click.argument("path_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("path_b", type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def similar(ctx, path_a, path_b, **flags):
    """Whether two maximal spaces are similar (B = S·A·S^-1)."""
    rt = _runtime(ctx, **flags)
    a, b = _read_linear_pair(path_a, path_b)
    envelope = get_congruence_config(rt.config)
    with worker_pool(rt.policy.jobs):
        result = similar_spaces(
            a,
            b,
            rt.policy,
            int(envelope.get("max_size", CONGRUENCE_MAX_SIZE)),
            int(envelope.get("max_order", CONGRUENCE_MAX_ORDER)),
        )
    if rt.settings.as_json:
        rt.emit_json({"similar": result})
    else:
        rt.console.print(f"{path_a} and {path_b} are {'similar' if result else 'not similar'}")
    return _exit_code(result)


@cli.command()
@click.argument("path_a", type=click.Path(exists=True, dir_okay=False))
@click.argument("path_b", type=click.Path(exists=True, dir_okay=False))
@common_options
@click.pass_context
def equiv(ctx, path_a, path_b, **flags):
    """Whether two affine spaces are equivalent (B = R·A·S)."""
    rt = _runtime(ctx, **flags)
    a, b = read_mspace(path_a), read_mspace(path_b)
    for path, space in ((path_a, a), (path_b, b)):
        if not isinstance(space, AffineSpace):
            raise click.UsageError(f"{path} holds a linear space; add an 'offset' block or use 'mspace similar'")
    with worker_pool(rt.policy.jobs):
        result = affine_equivalent(a, b, rt.policy, rt.seed, rt.sampling_attempts)
    if rt.settings.as_json:
        rt.emit_json({"equivalent": result})
    else:
        rt.console.print(f"{path_a} and {path_b} are {'equivalent' if result else 'not equivalent'}")
    return _exit_code(result)


def parse_gram(text: str, field: FieldDesc) -> Matrix:
    """'1 0; 0 2' -> [[1, 0], [0, 2]]."""
    rows = [row.split() for row in text.split(";")]
    if not rows or any(len(row) != len(rows) for row in rows):
        raise ParseError(f"Gram matrix {text!r} is not square")
    return Matrix.from_rows(field, [[field.parse(t) for t in row] for row in rows])


def _parse_sizes(text: str) -> List[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise ParseError(f"Block sizes must be comma-separated integers, got {text!r}")
    if not sizes:
        raise ParseError("No block sizes given")
    return sizes


def build_construction(
    kind: str,
    field: FieldDesc,
    size: Optional[int] = None,
    grams: Sequence[str] = (),
    sizes: Optional[str] = None,
    a: Optional[str] = None,
    b: Optional[str] = None,
) -> MatrixSubspace:
    """The linear space named by a `construct` invocation."""
    if kind in ("alt", "nt"):
        if size is None:
            raise click.UsageError(f"construct {kind} needs -n")
        return alt_space(size, field) if kind == "alt" else nt_space(size, field)
    if kind == "palt":
        if len(grams) != 1:
            raise click.UsageError("construct palt needs exactly one --gram")
        return p_alt(parse_gram(grams[0], field))
    if kind == "vee":
        if grams and sizes:
            raise click.UsageError("construct vee takes --gram blocks or --sizes, not both")
        if grams:
            spec = VeeSpec.from_grams([parse_gram(g, field) for g in grams])
        elif sizes:
            spec = VeeSpec.from_sizes(field, _parse_sizes(sizes))
        else:
            raise click.UsageError("construct vee needs --gram (repeatable) or --sizes")
        return model_space(spec, field)
    # companion
    if a is None or b is None:
        raise click.UsageError("construct companion needs --a and --b")
    return companion_line(field.parse(a), field.parse(b), field)


@cli.command()
@click.argument("kind", type=click.Choice(["alt", "nt", "palt", "vee", "companion"]))
@click.option("--field", "field_token", required=True, help="A prime, or Q")
@click.option("-n", "size", type=click.IntRange(min=1), default=None, help="Matrix size (alt, nt)")
@click.option("--gram", "grams", multiple=True, help="Gram matrix rows separated by ';' (palt, vee)")
@click.option("--sizes", default=None, help="Comma-separated block sizes with identity Grams (vee)")
@click.option("--a", "coef_a", default=None, help="Companion trace coefficient")
@click.option("--b", "coef_b", default=None, help="Companion constant coefficient")
@click.option("--affine", is_flag=True, help="Write I_n + V instead of V")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None, help="Output file (stdout if omitted)")
@common_options
@click.pass_context
def construct(ctx, kind, field_token, size, grams, sizes, coef_a, coef_b, affine, output, **flags):
    """Write a model space in .mspace format."""
    rt = _runtime(ctx, **flags)
    field = parse_field(field_token)
    space = build_construction(kind, field, size, grams, sizes, coef_a, coef_b)
    result = affine_translate(space) if affine else space
    text = serialize_mspace(result, comment=f"{'I + ' if affine else ''}{kind} over {field}")

    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
        rt.logger.info(f"Wrote {space} to {output}")

    if rt.settings.as_json:
        rt.emit_json({
            "kind": kind,
            "field": str(field),
            "n": space.n,
            "dim": space.dim,
            "affine": affine,
            "output": output,
        })
    elif output:
        rt.console.print(f"Wrote {space} to {output}")
    else:
        click.echo(text, nl=False)
    return EXIT_TRUE


def _print_suite_table(console: Console, reports: List[Dict[str, Any]]) -> None:
    table = Table(title="Suite results")
    table.add_column("Suite")
    table.add_column("Status")
    table.add_column("Checks", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Seed", justify="right")
    for report in reports:
        status = report["meta"]["status"]
        style = "green" if status == "passed" else "red"
        table.add_row(
            report["suite"],
            Text(status, style=style),
            str(report["checks_run"]),
            str(len(report["failures"])),
            "-" if report["seed"] is None else str(report["seed"]),
        )
    console.print(table)

    for report in reports:
        failures = report["failures"]
        if not failures:
            continue
        console.print(Text(f"{report['suite']}: {len(failures)} failure(s)", style="bold red"))
        for failure in failures[:MAX_LISTED_FAILURES]:
            console.print(f"  input:    {failure['input']}")
            console.print(f"  expected: {failure['expected']}")
            console.print(f"  actual:   {failure['actual']}")
        if len(failures) > MAX_LISTED_FAILURES:
            console.print(f"  ... {len(failures) - MAX_LISTED_FAILURES} more")


def _print_suite_list(console: Console) -> None:
    table = Table(title="Available suites")
    table.add_column("Category")
    table.add_column("Suite")
    table.add_column("Description")
    for category, suites in get_available_suites().items():
        for suite in suites:
            table.add_row(category, suite, get_suite_info(suite)["description"])
    console.print(table)


@cli.command()
@click.argument("suites", nargs=-1)
@click.option("--list", "list_suites", is_flag=True, help="List the available suites and exit")
@common_options
@click.pass_context
def verify(ctx, suites, list_suites, **flags):
    """Run verification suites, e.g. `verify quick` or `verify action1,anisotropy`."""
    rt = _runtime(ctx, **flags)
    if list_suites:
        _print_suite_list(rt.console)
        return EXIT_TRUE

    names = [name for arg in suites for name in parse_suite_string(arg)]
    valid, error = validate_suite_combination(names)
    if not valid:
        raise click.UsageError(error)

    start = time.time()
    reports = run_suites(names, rt.config, rt.settings.seed, rt.settings.samples, rt.policy)
    rt.logger.info(f"Ran {len(reports)} suite(s) in {time.time() - start:.2f}s")

    export_config = get_export_config(rt.config)
    if export_config.get("enabled", False):
        export_reports(
            reports,
            format=export_config.get("format", "json"),
            export_dir=export_config.get("directory", "./exports"),
            include_summary=export_config.get("include_summary", True),
            logger=rt.logger,
        )

    if rt.settings.as_json:
        projections = [suite_report_to_json(r) for r in reports]
        rt.emit_json(projections[0] if len(projections) == 1 else projections)
    else:
        _print_suite_table(rt.console, reports)
    return _exit_code(all(report_passed(r) for r in reports))


def _error(message: str) -> int:
    click.echo(message, err=True)
    return EXIT_ERROR


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Invoke the CLI and map the outcome to an exit code.

    Engine errors print `<ErrorClass>: <message>` to stderr and exit 2,
    as do usage errors and unreadable files.
    """
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        rv = cli.main(args=args, prog_name="mspace", standalone_mode=False)
    except MSpaceError as e:
        return _error(f"{type(e).__name__}: {e}")
    except click.ClickException as e:
        return _error(f"{type(e).__name__}: {e.format_message()}")
    except click.Abort:
        return _error("Aborted")
    except OSError as e:
        return _error(f"{type(e).__name__}: {e}")
    return EXIT_TRUE if rv is None else int(rv)
