#!/usr/bin/env python3
"""
Clifford Root-System Verifier

Command-line entry point: catalog construction, closure, admissibility,
identification, weight configurations and the verification suites.

Exit codes: 0 expected outcome, 1 unexpected or refuted outcome, 2 malformed input.
"""

import os
import sys
import json
from datetime import datetime
from typing import Any, Dict, List, Optional

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.markup import escape
from rich.table import Table

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

load_dotenv()

from core import (
    BOUND_CASES, CASE_IDS, SUITES, Report, build, build_weights, canonical_name, clifford_info, closure,
    exclude_r14, identify, is_admissible, spin_weight_signs, valuation_class, verify_all, verify_bounds,
    verify_gram, verify_limit_case, weight_config_from_dict,
)
from utils import Config, RootToolError, dumps, load_document, rootset_from_dict, rootset_to_dict, setup_logging
from utils.errors import MalformedInputError

console = Console()
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INPUT = 2


class VerifierGroup(click.Group):
    """Click group that turns toolkit errors into one-line messages and exit code 2."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except RootToolError as e:
            err_console.print(f"[bold red]error[/] {escape('[' + e.code + ']')} {escape(e.message)}", highlight=False)
            ctx.exit(EXIT_INPUT)


def _emit(payload: Dict[str, Any], as_json: bool, render) -> None:
    if as_json:
        click.echo(dumps(payload))
    else:
        render()


def _load_rootset(path: str):
    return rootset_from_dict(load_document(path))


def _save_reports(reports: List[Report]) -> None:
    """Append reports to the results log."""
    from utils.config import get_settings_snapshot

    log_file = Config.LOG_PATH
    os.makedirs(os.path.dirname(log_file) or ".", exist_ok=True)

    existing_logs = []
    if os.path.exists(log_file):
        try:
            with open(log_file, 'r') as f:
                existing_logs = json.load(f)
        except (json.JSONDecodeError, FileNotFoundError):
            existing_logs = []

    stamp = datetime.now().isoformat(timespec='seconds')
    settings = get_settings_snapshot()
    existing_logs.extend({'timestamp': stamp, 'settings': settings, 'report': r.to_dict()} for r in reports)

    with open(log_file, 'w') as f:
        json.dump(existing_logs, f, indent=2, sort_keys=True)
    err_console.print(f"Reports saved to: {log_file}")


def _render_report(report: Report) -> None:
    color = "green" if report.as_expected else "red"
    console.print(f"[bold]{report.claim}[/]: [{color}]{report.status.value}[/] "
                  f"(expected {report.expected_status.value})", highlight=False)
    table = Table(show_header=True, header_style="bold")
    table.add_column("step")
    table.add_column("operation")
    table.add_column("result")
    for step in report.steps:
        outcome = "ok" if step.passed else "; ".join(step.failures) or "failed"
        table.add_row(escape(step.name), escape(step.operation), escape(outcome))
    console.print(table)
    for note in report.annotations:
        console.print(f"  note: {escape(note)}", highlight=False)


def _finish_reports(ctx, reports: List[Report], as_json: bool, save: bool, extra: Optional[Dict] = None) -> None:
    if save:
        _save_reports(reports)
    if as_json:
        if len(reports) == 1 and extra is None:
            click.echo(dumps(reports[0].to_dict()))
        else:
            payload = {'reports': [r.to_dict() for r in reports],
                       'as_expected': all(r.as_expected for r in reports)}
            payload.update(extra or {})
            click.echo(dumps(payload))
    else:
        for report in reports:
            _render_report(report)
        if extra and 'rank_table' in extra:
            table = Table(title="Admissible ranks", show_header=True, header_style="bold")
            table.add_column("class")
            table.add_column("ranks")
            for shape, ranks in extra['rank_table'].items():
                table.add_row(shape, ", ".join(str(r) for r in ranks))
            console.print(table)
    ctx.exit(EXIT_OK if all(r.as_expected for r in reports) else EXIT_UNEXPECTED)


json_option = click.option('--json', 'as_json', is_flag=True, help='Emit JSON instead of a summary')
save_option = click.option('--save', is_flag=True, help='Append the reports to the results log')


@click.group(cls=VerifierGroup)
@click.option('-v', '--verbose', count=True, help='Increase log verbosity (-v info, -vv debug)')
@click.version_option(Config.VERSION, prog_name=Config.PROJECT_NAME)
def cli(verbose: int):
    """Exact root-system toolkit for even Clifford structures."""
    setup_logging(Config.log_level_for(verbose))


@cli.command('catalog')
@click.argument('family')
@click.argument('rank', type=int)
@json_option
def catalog_cmd(family: str, rank: int, as_json: bool):
    """Build the standard model of a root system, e.g. `catalog D 4`."""
    rs = build(family, rank)
    payload = {'family': family.upper(), 'rank': rank, 'name': canonical_name(family.upper(), rank),
               'rootset': rootset_to_dict(rs)}

    def render():
        console.print(f"[bold]{family.upper()}{rank}[/]: {len(rs)} roots in dimension {rs.form.dim}")
        for n, c in sorted(rs.norm_histogram().items()):
            console.print(f"  norm {n}: {c}", highlight=False)

    _emit(payload, as_json, render)


@cli.command('closure')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@click.option('--max-size', type=int, default=Config.DEFAULT_MAX_CLOSURE_SIZE, show_default=True)
@json_option
def closure_cmd(path: str, max_size: int, as_json: bool):
    """Minimal root system containing the vectors of a root-set file."""
    rs = _load_rootset(path)
    full = closure(rs, max_size)
    complement = full.difference(rs)
    payload = {'closure': rootset_to_dict(full), 'complement': rootset_to_dict(complement)}

    def render():
        console.print(f"input {len(rs)} vectors, closure {len(full)}, new {len(complement)}")

    _emit(payload, as_json, render)


@cli.command('admissible')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@json_option
def admissible_cmd(path: str, as_json: bool):
    """Whether the complement of a subsystem in its closure is a root system."""
    rs = _load_rootset(path)
    holds, complement = is_admissible(rs)
    payload: Dict[str, Any] = {'admissible': holds, 'complement': rootset_to_dict(complement)}
    if holds and len(complement):
        payload['complement_identification'] = identify(complement).to_dict()

    def render():
        verdict = "[green]admissible[/]" if holds else "[red]not admissible[/]"
        console.print(f"{verdict}; complement has {len(complement)} vectors")
        if 'complement_identification' in payload:
            console.print(f"complement is {identify(complement).label}")

    _emit(payload, as_json, render)


@cli.command('identify')
@click.argument('path', type=click.Path(exists=True, dir_okay=False))
@json_option
def identify_cmd(path: str, as_json: bool):
    """Name the irreducible components of a root system."""
    result = identify(_load_rootset(path), validate=True)
    _emit(result.to_dict(), as_json, lambda: console.print(f"{result.label} ({result.total_roots} roots)"))


@cli.command('weights')
@click.option('--shape', type=click.Choice(['I', 'II', 'III', 'IV']), required=True)
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False), required=True)
@json_option
def weights_cmd(shape: str, config_path: str, as_json: bool):
    """Build the weight set of a configuration file."""
    doc = load_document(config_path)
    if doc.setdefault('shape', shape) != shape:
        raise MalformedInputError(f"file declares shape {doc['shape']!r} but --shape is {shape!r}", "$.shape")
    rs = build_weights(weight_config_from_dict(doc))
    _emit(rootset_to_dict(rs), as_json, lambda: console.print(f"shape {shape}: {len(rs)} weights"))


@cli.command('clifford')
@click.argument('r', type=int)
@json_option
def clifford_cmd(r: int, as_json: bool):
    """Periodicity data and weight shape for rank r."""
    if r < 2:
        raise MalformedInputError(f"rank must be at least 2, got {r}", "r")
    info = clifford_info(r)
    shape, q = valuation_class(r)
    signs = spin_weight_signs(r)
    payload = info.to_dict()
    payload.update({'shape': shape.value, 'q': q, 'weights_plus': len(signs.plus),
                    'weights_minus': len(signs.minus) if signs.minus is not None else None})

    def render():
        console.print(f"Cl0_{r}: {info.field_kind.value} matrices, n_r = {info.n_r}, split = {info.split}")
        console.print(f"shape {shape.value}, q = {q}")

    _emit(payload, as_json, render)


@cli.group('verify', cls=VerifierGroup)
def verify():
    """Replay the classification claims."""


@verify.command('lemma-gram')
@click.option('--q', 'q', type=click.IntRange(Config.MIN_GRAM_ENUMERATION_Q, Config.MAX_GRAM_ENUMERATION_Q),
              required=True)
@json_option
@save_option
@click.pass_context
def verify_lemma_gram(ctx, q: int, as_json: bool, save: bool):
    """Gram classification for q sign combinations."""
    _finish_reports(ctx, [verify_gram(q)], as_json, save)


@verify.command('prop-bounds')
@click.option('--case', 'case_id', type=click.Choice(list(BOUND_CASES)), required=True)
@json_option
@save_option
@click.pass_context
def verify_prop_bounds(ctx, case_id: str, as_json: bool, save: bool):
    """Largest q of one weight-shape case."""
    _finish_reports(ctx, [verify_bounds(case_id)], as_json, save)


@verify.command('theorem')
@click.option('--case', 'case_id', type=click.Choice(list(CASE_IDS)), required=True)
@click.option('--config', 'config_path', type=click.Path(exists=True, dir_okay=False),
              help='Weight configuration replacing the built-in one')
@json_option
@save_option
@click.pass_context
def verify_theorem(ctx, case_id: str, config_path: Optional[str], as_json: bool, save: bool):
    """Assembly of a limiting case into F4, E6, E7 or E8."""
    config = weight_config_from_dict(load_document(config_path)) if config_path else None
    _finish_reports(ctx, [verify_limit_case(case_id, config)], as_json, save)


@verify.command('r14')
@json_option
@save_option
@click.pass_context
def verify_r14(ctx, as_json: bool, save: bool):
    """Exclusion of rank 14."""
    _finish_reports(ctx, [exclude_r14()], as_json, save)


@verify.command('all')
@click.option('--filter', 'suite_filter', type=click.Choice(list(SUITES)), help='Run one suite only')
@json_option
@save_option
@click.pass_context
def verify_all_cmd(ctx, suite_filter: Optional[str], as_json: bool, save: bool):
    """Every claim; exit 0 iff each report has its expected status."""
    result = verify_all(suite_filter)
    extra = {}
    if result.rank_table is not None:
        extra['rank_table'] = {k: list(v) for k, v in result.rank_table.items()}
    _finish_reports(ctx, result.reports, as_json, save, extra)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the command line on `argv` and return its exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="rootsys")
    except SystemExit as exc:
        if exc.code is None:
            return EXIT_OK
        return exc.code if isinstance(exc.code, int) else EXIT_UNEXPECTED
    return EXIT_OK


def main():
    """Main entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
