import json
import logging

import click

from commands.common import emit, out_option, seed_option, start_manifest, threads_option, write_text
from reports import PAYLOADS, SearchPayload, SystemReport, schema_for
from search.merit import PinningSearchState, TangencySearchState
from search.polysys import build_pinning_system, emit_system
from search.search import PINNING, TANGENCY, search_pinning, search_tangency
from search.validate import cross_validate_pinning_state, validate_tangency_state

logger = logging.getLogger(__name__)


@click.command("search")
@click.option("--formulation", required=True, type=click.Choice([TANGENCY, PINNING]))
@click.option("--budget", type=click.IntRange(min=1), default=100_000, show_default=True,
              help="Number of sampled states.")
@click.option("--validate/--no-validate", default=True, show_default=True,
              help="Re-check the best state geometrically.")
@seed_option
@threads_option
@out_option
@click.pass_context
def search(ctx, formulation, budget, validate, seed, threads, out):
    """Multistart search for a configuration violating the conjecture."""
    manifest = start_manifest(ctx)
    if formulation == TANGENCY:
        report = search_tangency(budget, seed=seed, threads=threads)
    else:
        report = search_pinning(budget, seed=seed, threads=threads)
    payload = report.to_dict()

    if validate:
        state = report.best_state
        if formulation == TANGENCY:
            checked = validate_tangency_state(TangencySearchState(state["centers"], state["line1"], state["line2"]),
                                              seed=seed)
        else:
            checked = cross_validate_pinning_state(
                PinningSearchState(state["h"], state["t"], state["hp"], state["tp"], state["u"]))
        payload["validation"] = checked.to_dict()
        if checked.valid:
            logger.warning("Best %s state passes geometric validation: %s", formulation,
                           json.dumps(state))
    emit(SearchPayload, payload, manifest, out)


@click.command("emit-system")
@click.option("--format", "fmt", type=click.Choice(["plain", "smtlib"]), default="plain", show_default=True)
@out_option
@click.pass_context
def emit_system_command(ctx, fmt, out):
    """Print the pinning polynomial system; with --out, save it and print a summary."""
    manifest = start_manifest(ctx)
    system = build_pinning_system()
    text = emit_system(system, fmt)
    if out is None:
        write_text(text, None)
        return
    write_text(text, out)
    payload = {
        "format": fmt,
        "variables": list(system.variables),
        "equalities": len(system.equalities),
        "inequalities": len(system.inequalities),
        "degrees": system.degrees,
        "out": out,
    }
    emit(SystemReport, payload, manifest, None)


@click.command("schema")
@click.option("--name", required=True, type=click.Choice(sorted(PAYLOADS)))
def schema(name):
    """Print the JSON schema of a CLI payload."""
    write_text(json.dumps(schema_for(name), indent=2) + "\n", None)
