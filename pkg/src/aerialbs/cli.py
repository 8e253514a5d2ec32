"""Command-line entry point.

Exit codes: 0 success, 1 a reproduced value missed its tolerance,
2 a scenario/ledger failed to parse or validate.
"""
from __future__ import annotations

import dataclasses
import functools
import logging
import sys
from pathlib import Path

import click

from .errors import ConfigError, DomainError, FeasibilityError
from .report import FORMATS, emit
from .reproduce import TABLES, Reproduction, reproduce
from .scenario import ScenarioConfig, bundled_scenarios, load_scenario, run_scenario

EXIT_TOLERANCE = 1
EXIT_INVALID = 2


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ConfigError as exc:
            for e in exc.errors:
                click.echo(f"error: {e}", err=True)
            sys.exit(EXIT_INVALID)
        except (DomainError, FeasibilityError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INVALID)
    return wrapper


def _load(scenario: str, seed: int | None, samples: int | None) -> ScenarioConfig:
    cfg = load_scenario(scenario)
    mc = cfg.monte_carlo
    if seed is not None:
        mc = dataclasses.replace(mc, seed=seed)
    if samples is not None:
        mc = dataclasses.replace(mc, samples=samples)
    return dataclasses.replace(cfg, monte_carlo=mc)


scenario_opt = click.option("--scenario", "scenario", required=True,
                            help="Scenario file, or the name of a bundled scenario.")
seed_opt = click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None,
                        help="Monte Carlo seed (default: the scenario's, else 42).")
samples_opt = click.option("--samples", type=click.IntRange(min=1), default=None,
                           help="Monte Carlo samples per radius.")
format_opt = click.option("--format", "fmt", type=click.Choice(FORMATS), default="pretty-table",
                          show_default=True)
out_opt = click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=None,
                       help="Write output files to this directory instead of stdout.")


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log applied defaults and their derivations.")
def main(verbose: bool):
    """Power, endurance, coverage and dimensioning of aerial base stations."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def _emit(rows, fmt, out, name):
    try:
        return emit(rows, fmt, out, name=name)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc


def _analysis_command(name: str, analyses: list[str], help_text: str):
    @main.command(name, help=help_text)
    @scenario_opt
    @seed_opt
    @samples_opt
    @format_opt
    @out_opt
    @_handle_errors
    def command(scenario, seed, samples, fmt, out):
        cfg = _load(scenario, seed, samples)
        _emit(run_scenario(cfg, analyses), fmt, out, f"{cfg.id}-{name}")
    return command


_analysis_command("power", ["power"], "Mechanical, communication and total power.")
_analysis_command("endurance", ["endurance"], "Harvest ratio and service time.")
_analysis_command("coverage", ["coverage"], "Monte Carlo coverage radius.")
_analysis_command("dimension", ["coverage", "dimension"], "Fleet size and backup batteries.")


def _report_checks(rep: Reproduction) -> None:
    for c in rep.checks:
        status = "PASS" if c.passed else "FAIL"
        click.echo(f"{status} [{rep.table}] {c.cell}: computed {c.computed:.6g}, "
                   f"reference {c.expected:g} ({c.tolerance})", err=True)
    n_fail = sum(not c.passed for c in rep.checks)
    click.echo(f"{rep.table}: {len(rep.checks) - n_fail}/{len(rep.checks)} checks passed", err=True)


@main.command("reproduce")
@click.argument("table", type=click.Choice(TABLES))
@seed_opt
@samples_opt
@format_opt
@out_opt
@_handle_errors
def reproduce_cmd(table, seed, samples, fmt, out):
    """Re-run the bundled scenarios behind TABLE and compare with the reference values."""
    rep = reproduce(table, seed=42 if seed is None else seed, samples=samples or 10_000)
    _emit(rep.rows, fmt, out, f"table-{table}")
    if out is not None:
        lines = ["table,cell,computed,reference,tolerance,passed"]
        lines += [f"{c.table},{c.cell},{c.computed!r},{c.expected!r},{c.tolerance},{c.passed}" for c in rep.checks]
        (out / f"table-{table}-checks.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _report_checks(rep)
    if not rep.passed:
        sys.exit(EXIT_TOLERANCE)


@main.command("emit")
@click.option("--scenario", default=None, help="Scenario file or bundled name.")
@click.option("--table", type=click.Choice(TABLES), default=None, help="Reproduction table to emit.")
@seed_opt
@samples_opt
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", show_default=True)
@out_opt
@_handle_errors
def emit_cmd(scenario, table, seed, samples, fmt, out):
    """Write the rows of a scenario run or a table reproduction."""
    if (scenario is None) == (table is None):
        raise click.UsageError("give exactly one of --scenario or --table")
    if table is not None:
        rows = reproduce(table, seed=42 if seed is None else seed, samples=samples or 10_000).rows
        name = f"table-{table}"
    else:
        cfg = _load(scenario, seed, samples)
        rows, name = run_scenario(cfg), cfg.id
    for p in _emit(rows, fmt, out, name):
        click.echo(str(p), err=True)


@main.command("scenarios")
def scenarios_cmd():
    """List the bundled scenarios."""
    for name in bundled_scenarios():
        click.echo(name)


if __name__ == "__main__":
    main()
