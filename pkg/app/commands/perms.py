import click

from commands.common import budget_option, emit, load_config, out_option, parse_order, seed_option, \
    start_manifest, threads_option
from reports import PermsReport, TransversalReport
from transversal.permutations import sweep_geometric_permutations
from transversal.solver import find_transversal


@click.command("perms")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--resolution", type=int, default=100_000, show_default=True, help="Sphere directions to sweep.")
@budget_option
@seed_option
@threads_option
@out_option
@click.pass_context
def perms(ctx, config_path, resolution, budget, seed, threads, out):
    """Enumerate the certified geometric permutations of a configuration."""
    cfg, digest = load_config(config_path)
    manifest = start_manifest(ctx, digest)
    result = sweep_geometric_permutations(cfg, resolution, seed=seed, threads=threads, budget=budget)
    payload = {
        "gps": sorted(str(gp) for gp in result.gps),
        "certificates": [c.to_dict() for c in result.certificates],
        "rejected": result.rejected,
        "positive_directions": int(result.positive_directions),
        "resolution": result.resolution,
    }
    emit(PermsReport, payload, manifest, out)


@click.command("transversal")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--order", "order_text", required=True, help="Target order, e.g. ABCD.")
@budget_option
@seed_option
@out_option
@click.pass_context
def transversal(ctx, config_path, order_text, budget, seed, out):
    """Look for a line transversal realizing one order.

    A miss reports the best depth reached under the order constraint.
    """
    cfg, digest = load_config(config_path)
    manifest = start_manifest(ctx, digest)
    target = parse_order(order_text, cfg)
    result = find_transversal(cfg, target, budget=budget, seed=seed)
    payload = result.to_dict()
    payload.setdefault("status", "found")
    emit(TransversalReport, payload, manifest, out)
