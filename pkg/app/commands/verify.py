import os

import click

import settings
from commands.common import emit, out_option, seed_option, start_manifest, threads_option
from lemmas.runner import LEMMAS, SAMPLERS, run_verification
from reports import VerifyReport


@click.command("verify")
@click.option("--lemma", required=True, type=click.Choice(LEMMAS))
@click.option("--trials", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--sampler", type=click.Choice(SAMPLERS), default="box", show_default=True,
              help="box: centers in a cube of side 12, kept when a transversal is certified. "
                   "stabbed: balls strung along a random line.")
@seed_option
@threads_option
@out_option
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Per-trial margins; defaults to <run log dir>/verify_<lemma>_<seed>.csv.")
@click.pass_context
def verify(ctx, lemma, trials, sampler, seed, threads, out, csv_path):
    """Check a lemma over seeded random trials and summarize the margins."""
    manifest = start_manifest(ctx)
    run = run_verification(lemma, trials=trials, seed=seed, threads=threads, sampler=sampler)

    if csv_path is None:
        csv_path = os.path.join(settings.RUN_LOG_DIR, f"verify_{lemma}_{seed}.csv")
    os.makedirs(os.path.dirname(os.path.abspath(csv_path)), exist_ok=True)
    run.frame.to_csv(csv_path, index=False)

    payload = {**run.summary(), "csv": csv_path}
    if "independence_number" in run.frame:
        payload["independence_number"] = int(run.frame["independence_number"].iloc[0])
    emit(VerifyReport, payload, manifest, out)
