"""
Command line front end: catalog dumps, main tower tables, kernel reports,
the verification suite and the zeta identities.
"""

import logging
from pathlib import Path
from typing import Any

import arrow
import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from db import Session, make_engine
from errors import BesselLabError, ConfigError
from models import BesselCharacter, Command, RunConfig, Scalar, Window
from models.scalar import ALPHA, GAMMA, ONE, R, X, to_fraction
from services.catalog_service import emit_catalog
from services.eigensystem_service import assemble_eigensystem, main_tower_table, solve_and_report
from services.report_service import (
    report_document,
    save_run,
    tower_document,
    write_json,
    write_tower_csv,
)
from services.verify_service import PRIMES, run_checks
from services.zeta_service import (
    exceptional_siegelized_value,
    iia_siegelized_zeta,
    shadow_sides,
    verify_via_identity,
    via_identity_sides,
    via_l_factor,
)

logger = logging.getLogger("bessel_lab")
console = Console()


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def parse_params(pairs: tuple[str, ...]) -> dict[str, str]:
    """``sym=value`` pairs from the command line."""
    params = {}
    for pair in pairs:
        name, sep, value = pair.partition("=")
        if not sep:
            raise ConfigError(f"--param expects sym=value, got {pair!r}")
        try:
            to_fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"--param {name}: {value!r} is not an exact rational") from exc
        params[name.strip()] = value.strip()
    return params


def load_config(config_path: Path | None, overrides: dict[str, Any]) -> RunConfig:
    base = RunConfig.load(config_path) if config_path else RunConfig()
    cli_params = parse_params(overrides.pop("param", ()))
    if cli_params:
        overrides["params"] = {**base.params, **cli_params}
    overrides["families"] = overrides.pop("family", ()) or None
    overrides["type"] = overrides.pop("rep_type", None)
    overrides["output"] = overrides.pop("out", None)
    if not overrides.get("xi_twist"):
        overrides.pop("xi_twist", None)
    return base.merged(**overrides)


def character(config: RunConfig) -> BesselCharacter:
    if config.case is None:
        raise ConfigError("this command needs --case")
    return BesselCharacter.generic(config.case, config.m0).specialize(config.specialization())


def parameters(config: RunConfig) -> tuple[Scalar, Scalar, Scalar]:
    """α, γ and r, specialized where the config gives values."""
    values = config.specialization()
    return tuple(symbol.specialize(values) for symbol in (ALPHA, GAMMA, R))


def _require_type(config: RunConfig) -> None:
    if config.rep_type is None:
        raise ConfigError("this command needs --type")


def run_catalog(config: RunConfig) -> tuple[dict, bool]:
    catalog = emit_catalog()
    table = Table(title="Representation catalog")
    for column in ("type", "P1 dim", "λ", "μ", "η"):
        table.add_column(column)
    for name, entry in catalog.items():
        table.add_row(name, str(entry["p1_dim"]), str(entry["lambda"]), str(entry["mu"]), str(entry["eta"]))
    console.print(table)
    return catalog, True


def run_tower(config: RunConfig) -> tuple[dict, bool]:
    _require_type(config)
    char = character(config)
    alpha, gamma, r = parameters(config)
    window = config.window or Window.default(config.m0)
    table = main_tower_table(config.rep_type, char, window, config.eig_index, alpha, gamma, r, config.xi_twist)
    if config.output:
        write_tower_csv(config.output.with_suffix(".csv"), table)
    view = Table(title=f"Main tower {config.rep_type} ({char.case}, m0={char.m0})")
    for column in ("l", "m", "w", "value"):
        view.add_column(column)
    for row in table.rows():
        view.add_row(*(str(cell) for cell in row))
    console.print(view)
    return tower_document(table), True


def run_solve(config: RunConfig) -> tuple[dict, bool]:
    _require_type(config)
    char = character(config)
    alpha, gamma, r = parameters(config)
    window = config.window or Window.default(config.m0)
    system = assemble_eigensystem(
        config.rep_type, config.eig_index, char, window, config.families, alpha, gamma, r, config.xi_twist
    )
    report = solve_and_report(system, alpha, gamma, r, config.xi_twist)
    for warning in report.warnings:
        logger.warning(warning)
    view = Table(title=f"Kernel {report.rep_type} #{report.eig_index} ({report.case}, m0={report.m0})")
    for column in ("index", "attainable", "forced nonzero", "identically zero"):
        view.add_column(column)
    for name, value in report.distinguished.items():
        view.add_row(name, str(value.attainable), str(value.forced_nonzero), str(value.identically_zero))
    console.print(view)
    console.print(
        f"dim {report.dim}, validated {report.validated_dim}, "
        f"main tower matches series: {report.main_tower_matches_series}"
    )
    ok = report.validated_dim > 0 and report.main_tower_matches_series
    return report.model_dump(mode="json"), ok


def run_verify(config: RunConfig, db_path: Path | None, only: str | None) -> tuple[dict, bool]:
    started = arrow.utcnow()
    primes = (config.p,) if config.p else PRIMES
    report = run_checks(config.seed, config.jobs, only, primes)
    finished = arrow.utcnow()
    for item in report.items:
        mark = "✓" if item.passed else "❌"
        console.print(f"{mark} {item.check_id}  [dim]{item.detail}[/dim]")
    summary = Table(title="Verification")
    for column in ("passed", "failed", "skipped", "elapsed"):
        summary.add_column(column)
    document = report_document(report)
    summary.add_row(
        str(document["passed"]),
        str(document["failed"]),
        str(document["skipped"]),
        finished.humanize(started, only_distance=True),
    )
    console.print(summary)
    if db_path:
        with Session(make_engine(db_path)) as session:
            save_run(session, report, config, started, finished)
    return document, report.ok


def run_zeta(config: RunConfig) -> tuple[dict, bool]:
    identities = []
    for gamma in (ONE, -ONE, GAMMA):
        left, right = via_identity_sides(gamma)
        identities.append(
            {"name": f"via_identity gamma={gamma.to_text()}", "left": left.to_text(), "right": right.to_text(), "holds": verify_via_identity(gamma)}
        )
    substituted, closed = shadow_sides()
    identities.append(
        {"name": "shadow_constants", "left": substituted.to_text(), "right": closed.to_text(), "holds": substituted == closed}
    )
    document = {
        "l_factor": via_l_factor(GAMMA).value.to_text(),
        "identities": identities,
        "iia_siegelized_zeta": iia_siegelized_zeta(-ALPHA * GAMMA, via_l_factor(GAMMA)).to_text(),
        "exceptional_siegelized_value": exceptional_siegelized_value().to_text(),
        "variable": X.to_text(),
    }
    for identity in identities:
        console.print(f"{'✓' if identity['holds'] else '❌'} {identity['name']}")
    return document, all(identity["holds"] for identity in identities)


def execute(config: RunConfig, db_path: Path | None = None, only: str | None = None) -> bool:
    match config.command:
        case Command.CATALOG:
            document, ok = run_catalog(config)
        case Command.TOWER:
            document, ok = run_tower(config)
        case Command.SOLVE:
            document, ok = run_solve(config)
        case Command.VERIFY:
            document, ok = run_verify(config, db_path, only)
        case Command.ZETA:
            document, ok = run_zeta(config)
    if config.output:
        write_json(config.output, document)
    return ok


def run_options(func):
    """Options shared by every subcommand; CLI values override the config file."""
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path)),
        click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="JSON report path"),
        click.option("--jobs", type=int, help="Worker processes for verify"),
        click.option("--seed", type=int, help="Seed for randomized checks"),
        click.option("--type", "rep_type", help="Representation type, e.g. IIa"),
        click.option("--case", type=click.Choice(["inert", "ramified", "split"])),
        click.option("--m0", type=int, help="Conductor of the Bessel character"),
        click.option("--param", multiple=True, help="sym=value, e.g. r=3"),
        click.option("--window", type=(int, int), help="L_max M_max"),
        click.option("--family", multiple=True, help="Constraint family id"),
        click.option("--eig-index", type=int, help="Eigen-pair of a 2-dim type"),
        click.option("--xi-twist", is_flag=True, help="Use the Vc eigenvalues for Vb"),
        click.option("--p", type=int, help="Prime for the coset checks"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _run(command: Command | None, config_path: Path | None, extra: dict[str, Any], /, **overrides) -> None:
    if command is not None:
        overrides["command"] = command.value
    try:
        config = load_config(config_path, overrides)
        ok = execute(config, **extra)
    except (BesselLabError, ValueError) as exc:
        raise click.ClickException(f"[{command or 'run'}] {type(exc).__name__}: {exc}") from exc
    if not ok:
        click.get_current_context().exit(1)


@click.group()
@click.option("--verbose", is_flag=True, help="Log at DEBUG level")
def cli(verbose: bool) -> None:
    """Exact checks for P1-invariant Bessel functions on GSp(4)."""
    configure_logging(verbose)


def _subcommand(command: Command, help_text: str):
    @cli.command(name=command.value, help=help_text)
    @run_options
    def subcommand(config_path, **overrides):
        _run(command, config_path, {}, **overrides)

    return subcommand


catalog = _subcommand(Command.CATALOG, "Dump the representation catalog.")
tower = _subcommand(Command.TOWER, "Closed-form main tower values on a window.")
solve = _subcommand(Command.SOLVE, "Assemble and solve a truncated eigensystem.")
zeta = _subcommand(Command.ZETA, "Check the zeta integral identities.")


@cli.command(name="verify")
@run_options
@click.option("--db", "db_path", type=click.Path(dir_okay=False, path_type=Path), help="Store the run in SQLite")
@click.option("--only", help="Only run checks whose id starts with this")
def verify(config_path, db_path, only, **overrides):
    """Run the verification suite."""
    _run(Command.VERIFY, config_path, {"db_path": db_path, "only": only}, **overrides)


@cli.command(name="run")
@run_options
@click.option("--command", "command_name", type=click.Choice([command.value for command in Command]))
@click.option("--db", "db_path", type=click.Path(dir_okay=False, path_type=Path), help="Store a verify run in SQLite")
def run(config_path, command_name, db_path, **overrides):
    """Run the command named by --command or by the config file."""
    if command_name:
        overrides["command"] = command_name
    _run(None, config_path, {"db_path": db_path}, **overrides)


if __name__ == "__main__":
    cli()
