"""Command-line front end: validate, apply, fmt, serve.

Exit codes: 0 success, 1 usage error, 2 parse/validation error, 3 the event
produced zero executed entries, 4 propagation aborted.
"""

from __future__ import annotations

import json
import sys

import click

from .document import (
    load_engine_file,
    parse_event_expr,
    to_json_document,
    trace_json_text,
)
from .dsl import print_document, try_parse_document
from .engine import (
    EXECUTED,
    NO_MATCHING_RULE,
    NO_STRATEGY,
    PropagationTrace,
    SKIPPED_CONDITION,
    SKIPPED_DUPLICATE,
    UNKNOWN_TARGET,
)
from .errors import DslParseError, GevoError, PropagationAborted
from .schema import validate_all


def render_trace_text(trace: PropagationTrace) -> str:
    """Indented bullet rendering; depth maps to indentation."""
    lines = []
    for e in trace.entries:
        indent = "  " * e.depth
        where = f"{e.event.target.kind.value} {e.event.target.display()}"
        if e.rule_id is not None:
            head = f"{indent}- Strategy {e.strategy_id}, rule {e.rule_id} on {where}"
        else:
            head = f"{indent}- {e.event.name} on {where}"
        if e.status == EXECUTED:
            lines.append(head)
        elif e.status == SKIPPED_DUPLICATE:
            lines.append(f"{head}, if-needed (skipped: duplicate)")
        elif e.status == SKIPPED_CONDITION:
            lines.append(f"{head} (skipped: {e.reason or 'condition'})")
        elif e.status == NO_STRATEGY:
            lines.append(f"{head} (no strategy)")
        elif e.status == NO_MATCHING_RULE:
            lines.append(f"{head} (no matching rule)")
        elif e.status == UNKNOWN_TARGET:
            lines.append(f"{head} (unknown target)")
        else:
            lines.append(f"{head} ({e.status})")
    return "\n".join(lines)


@click.group()
def cli():
    """Evolve graph classes through traced, rule-driven propagation."""


@cli.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def validate_cmd(file):
    """Check that a document parses and all its graphs are consistent."""
    try:
        engine = load_engine_file(file)
    except (DslParseError, GevoError, json.JSONDecodeError) as err:
        _report_load_error(err)
        return 2
    violations = validate_all(engine.ws)
    if violations:
        for v in violations:
            click.echo(str(v), err=True)
        return 2
    click.echo(f"{file}: OK ({len(engine.ws.graphs())} graph(s))")
    return 0


@cli.command("apply")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--event", "event_expr", required=True,
              help='Event expression, e.g. "delete-node(C2)".')
@click.option("--dry-run", is_flag=True, help="Preview without committing.")
@click.option("--trace", "show_trace", is_flag=True, help="Print the propagation trace.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text",
              help="Trace rendering.")
@click.option("-o", "--output", type=click.Path(dir_okay=False),
              help="Write the resulting workspace document (JSON) here.")
def apply_cmd(file, event_expr, dry_run, show_trace, fmt, output):
    """Dispatch one evolution event against a document."""
    try:
        engine = load_engine_file(file)
        event = parse_event_expr(engine, event_expr)
    except (DslParseError, GevoError, json.JSONDecodeError) as err:
        _report_load_error(err)
        return 2

    try:
        if dry_run:
            trace, _after = engine.dry_run(event)
        else:
            trace = engine.dispatch(event)
    except PropagationAborted as err:
        if show_trace:
            _emit_trace(err.trace, fmt)
        click.echo(f"aborted: {err.cause}", err=True)
        return 4

    if show_trace:
        _emit_trace(trace, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            json.dump(to_json_document(engine), fh, indent=2, sort_keys=True)
            fh.write("\n")
    executed = len(trace.executed())
    click.echo(f"{executed} executed, {len(trace.entries)} entries"
               + (" (dry run)" if dry_run else ""), err=True)
    return 0 if executed else 3


def _emit_trace(trace, fmt):
    if fmt == "json":
        click.echo(trace_json_text(trace))
    else:
        click.echo(render_trace_text(trace))


def _report_load_error(err):
    if isinstance(err, DslParseError):
        for d in err.diagnostics:
            click.echo(str(d), err=True)
    else:
        click.echo(str(err), err=True)


@cli.command("fmt")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def fmt_cmd(file):
    """Print a document in canonical form."""
    with open(file, "r", encoding="utf-8") as fh:
        text = fh.read()
    doc, diagnostics = try_parse_document(text)
    if doc is None:
        for d in diagnostics:
            click.echo(str(d), err=True)
        return 2
    click.echo(print_document(doc), nl=False)
    return 0


@cli.command("serve")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--undo-depth", default=50, show_default=True, type=int,
              help="Snapshots kept per session for undo.")
def serve_cmd(file, port, host, undo_depth):
    """Serve the workbench HTTP API with the document preloaded."""
    import uvicorn

    from .service import create_app

    try:
        engine = load_engine_file(file)
    except (DslParseError, GevoError, json.JSONDecodeError) as err:
        _report_load_error(err)
        return 2
    app = create_app(initial_engine=engine, undo_depth=undo_depth)
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def main(argv=None) -> int:
    """Run the CLI and return its exit code."""
    try:
        result = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as err:
        err.show()
        return 1
    except click.ClickException as err:
        err.show()
        return err.exit_code
    except click.exceptions.Abort:
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
