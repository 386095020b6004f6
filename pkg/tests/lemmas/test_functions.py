import math

import numpy as np
import pytest

from geometry.errors import DomainError
from lemmas.functions import (
    AngleFunctionTable,
    BallPair,
    abc_expression,
    abc_factors,
    double_pinning_bound,
    f,
    g,
    scan_abc_below_one,
    scan_f_above_one,
    scan_G_concavity,
    scan_g_superadditivity,
    special_functions,
)


def test_spot_values():
    assert g(0.0) == pytest.approx(2.0)
    assert g(math.pi) == pytest.approx(0.0, abs=1e-7)
    assert f(math.pi / 4) == pytest.approx(1.0)
    assert f(math.pi / 2) == pytest.approx(1.0)
    assert BallPair(4.0, 0.0).G(0.0) == pytest.approx(math.pi / 6)


def test_double_pinning_bound():
    assert double_pinning_bound(2.0) == pytest.approx(2.0)
    assert double_pinning_bound(2.5) < 2.0
    with pytest.raises(DomainError):
        double_pinning_bound(1.5)


def test_abc_factorization():
    x = np.linspace(0.9, 1.5, 7)
    first, second, third = abc_factors(x)
    assert np.allclose(first * second * third, abc_expression(x) - 1.0)


def test_ball_pair_domain():
    with pytest.raises(DomainError):
        BallPair(1.0, 0.0)
    with pytest.raises(DomainError):
        BallPair(3.0, 2.5)
    with pytest.raises(DomainError):
        BallPair(3.0, 0.5).G(1.5)


@pytest.mark.parametrize("d,b", [(2.5, 1.0), (3.0, 0.5), (4.0, 0.0), (5.5, 1.8)])
def test_second_derivative_matches_finite_differences(d, b):
    table = AngleFunctionTable.build(BallPair(d, b), points=50, edge=0.05)
    assert np.all(table.G2 < 0)
    assert np.allclose(table.G2_fd, table.G2, rtol=1e-5, atol=1e-6)


def test_g_scan_equalities_need_two_half_turns():
    scan = scan_g_superadditivity(points=40)
    assert scan.holds
    assert scan.detail["equality_cells"] > 0
    assert scan.detail["unexplained_equalities"] == 0


def test_f_and_abc_scans():
    assert scan_f_above_one(1000).holds
    abc = scan_abc_below_one(1000)
    assert abc.holds
    assert abc.detail["sign_errors"] == 0
    assert abc.detail["factorization_error"] < 1e-9


def test_G_concavity_scan():
    scan = scan_G_concavity(pairs=5, seed=1, points=50)
    assert scan.holds
    assert scan.worst < 0


@pytest.mark.slow
def test_full_special_functions_report():
    report = special_functions(grid=60, points=2000, pairs=20)
    assert report.holds
    assert report.to_dict()["spot_values"]["g(0)"] == pytest.approx(2.0)


def test_third_derivative_matches_second():
    pair = BallPair(3.0, 0.5)
    z = np.linspace(0.3, 0.9, 7)
    step = 1e-5
    numeric = (pair.f2(z + step) - pair.f2(z - step)) / (2 * step)
    assert np.allclose(pair.f3(z), numeric, rtol=1e-5)
