import numpy as np
import pandas as pd
import pytest

from geometry.core import OrderedOrder, stabbing_order
from geometry.errors import InvalidInput
from geometry.sampling import make_rng
from lemmas.runner import SAMPLE_BOX, random_transversal_configuration, run_verification


def test_distance_trials_have_no_violations():
    run = run_verification("distance", trials=20, seed=3)
    assert run.violations == 0
    assert list(run.frame["trial"]) == list(range(20))
    summary = run.summary()
    assert summary["margins"]["count"] == 20
    assert summary["margins"]["min"] > 0


@pytest.mark.parametrize("n", [3, 4])
def test_box_instances_are_certified_in_label_order(n):
    cfg, line = random_transversal_configuration(n, make_rng(8, n))
    assert len(cfg) == n
    assert cfg.is_non_overlapping()
    assert np.all(np.abs(cfg.centers) <= SAMPLE_BOX / 2)
    assert stabbing_order(cfg, line) == OrderedOrder(cfg.labels)


def test_box_instances_spread_wider_than_a_strung_line():
    # balls strung along a line keep first and last centers within about 5.6
    spans = []
    for k in range(20):
        cfg, _ = random_transversal_configuration(3, make_rng(9, k))
        spans.append(np.linalg.norm(cfg.ball("A").c - cfg.ball("C").c))
    assert max(spans) > 6.0


def test_worker_count_does_not_change_rows():
    serial = run_verification("angle", trials=1500, seed=4, threads=1, sampler="stabbed")
    parallel = run_verification("angle", trials=1500, seed=4, threads=2, sampler="stabbed")
    pd.testing.assert_frame_equal(serial.frame, parallel.frame)


def test_box_sampler_is_reproducible():
    first = run_verification("angle", trials=8, seed=6)
    again = run_verification("angle", trials=8, seed=6, threads=2)
    pd.testing.assert_frame_equal(first.frame, again.frame)
    assert first.violations == 0


def test_graph_is_a_single_row():
    run = run_verification("graph", trials=10)
    assert run.trials == 1
    assert run.violations == 0
    assert int(run.frame["independence_number"].iloc[0]) == 2


@pytest.mark.parametrize("lemma", ["triangle", "2d"])
def test_geometric_lemmas_hold(lemma):
    assert run_verification(lemma, trials=5, seed=1).violations == 0


@pytest.mark.slow
@pytest.mark.parametrize("lemma", ["cylinder", "cylinder6"])
def test_packing_lemmas_hold(lemma):
    assert run_verification(lemma, trials=2, seed=2).violations == 0


def test_bad_arguments():
    with pytest.raises(InvalidInput):
        run_verification("nonsense")
    with pytest.raises(InvalidInput):
        run_verification("distance", trials=0)
    with pytest.raises(InvalidInput):
        run_verification("distance", sampler="grid")
