import logging

import click

from commands.common import budget_option, emit, load_config, out_option, parse_order, seed_option, \
    start_manifest
from geometry.errors import GeometryError, InvalidInput
from pinning.classify import classify_minimal_pinning
from pinning.hyperboloidal import HyperboloidalParams, make_hyperboloidal
from pinning.pinned import is_pinned
from pinning.shrink import shrink_to_pin, two_stage_shrink
from reports import HyperbReport, PinReport

logger = logging.getLogger(__name__)


def _classify(cfg, line):
    if len(cfg) != 4:
        return None
    try:
        return classify_minimal_pinning(cfg, line).to_dict()
    except GeometryError as e:
        logger.warning("Could not classify the pinning: %s", e)
        return None


def _pinned_line(cfg, line, order, seed):
    return {
        "order": str(order),
        "line": line.to_dict(),
        "certificate": is_pinned(cfg, line, seed=seed).to_dict(),
        "classification": _classify(cfg, line),
    }


@click.command("pin")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--order", "order_text", required=True, help="Order to pin, e.g. ABCD.")
@click.option("--two-stage", is_flag=True, help="Pin a second order as well (needs --order2).")
@click.option("--order2", "order2_text", default=None, help="Second order for --two-stage.")
@budget_option
@seed_option
@out_option
@click.pass_context
def pin(ctx, config_path, order_text, two_stage, order2_text, budget, seed, out):
    """Shrink the balls until the order is pinned, then certify and classify the pinning."""
    cfg, digest = load_config(config_path)
    manifest = start_manifest(ctx, digest)
    order = parse_order(order_text, cfg)

    if two_stage:
        if order2_text is None:
            raise InvalidInput("--two-stage needs --order2")
        order2 = parse_order(order2_text, cfg)
        result = two_stage_shrink(cfg, order, order2, seed=seed, budget=budget)
        pinned = result.configuration
        payload = {
            "mode": "two_stage",
            "t_star": result.t1,
            "homothety": result.homothety,
            "configuration": pinned.to_dict()["balls"],
            "lines": [_pinned_line(pinned, result.line1, order, seed),
                      _pinned_line(pinned, result.line2, order2, seed)],
        }
    else:
        result = shrink_to_pin(cfg, order, seed=seed, budget=budget)
        if result.t_star > 0.0:
            pinned = cfg.scaled(result.t_star)
            lines = [_pinned_line(pinned, result.line, order, seed)]
        else:
            # collinear centers: the radius shrinks to zero and nothing is pinned
            pinned = cfg
            lines = [{"order": str(order), "line": result.line.to_dict()}]
        payload = {
            "mode": "single",
            "t_star": result.t_star,
            "configuration": pinned.to_dict()["balls"],
            "lines": lines,
        }
    emit(PinReport, payload, manifest, out)


@click.command("hyperb")
@click.option("--h", "h", type=float, required=True, help="Hyperboloid parameter h.")
@click.option("--t", "t", type=float, nargs=4, required=True, help="Four tangency parameters.")
@click.option("--classify", is_flag=True, help="Also classify the pinning of the x-axis.")
@out_option
@click.pass_context
def hyperb(ctx, h, t, classify, out):
    """Build the hyperboloidal configuration of (h, t) tangent to the x-axis."""
    manifest = start_manifest(ctx)
    built = make_hyperboloidal(HyperboloidalParams(h, tuple(t)))
    payload = {
        "h": h,
        "t": list(t),
        "balls": built.configuration.to_dict()["balls"],
        "line": built.line.to_dict(),
        "tangent": list(built.tangent),
        "non_overlapping": built.non_overlapping,
        "classification": _classify(built.configuration, built.line) if classify else None,
    }
    emit(HyperbReport, payload, manifest, out)
