"""Helpers shared by the subcommands: manifests, payload output, config loading."""

import logging
import os

import click

import settings
from geometry.core import Configuration, OrderedOrder
from geometry.errors import InvalidInput
from tracking.run_log import RunManifest, log_run_event

logger = logging.getLogger(__name__)

seed_option = click.option("--seed", type=int, default=0, show_default=True, help="Root seed for every random stream.")
threads_option = click.option("--threads", type=click.IntRange(min=1), default=lambda: settings.THREADS,
                              show_default="hardware count", help="Worker processes.")
out_option = click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                          help="Write the output here instead of standard output.")
budget_option = click.option("--budget", type=click.IntRange(min=1), default=2000, show_default=True,
                             help="Optimizer / sample budget.")


def start_manifest(ctx, digest=None):
    params = dict(ctx.params)
    return RunManifest(ctx.info_name, params, params.get("seed"), input_digest=digest)


def load_config(path):
    cfg, digest = Configuration.load(path)
    logger.info("Loaded %d balls from %s", len(cfg), path)
    return cfg, digest


def parse_order(text, cfg=None):
    order = OrderedOrder.parse(text)
    if cfg is not None and sorted(order.labels) != sorted(cfg.labels):
        raise InvalidInput(f"Order {order} is not a permutation of the labels {''.join(cfg.labels)}")
    return order


def write_text(text, out):
    if out is None:
        click.echo(text, nl=not text.endswith("\n"))
        return
    directory = os.path.dirname(os.path.abspath(out))
    os.makedirs(directory, exist_ok=True)
    with open(out, "w") as f:
        f.write(text)
    logger.info("Wrote %s", out)


def emit(model_cls, payload, manifest, out=None):
    """Validate `payload` against its model, print or save it, and log the run."""
    manifest.finish()
    report = model_cls.model_validate({**payload, "manifest": manifest.to_dict()})
    write_text(report.model_dump_json(indent=2) + "\n", out)
    log_run_event("run", manifest.to_dict(), settings.RUN_LOG_DIR)
    return report
