import pytest

from geometry.errors import InvalidInput, NotATransversal
from geometry.sampling import make_rng
from lemmas.planar import Disk, Line2, interior_transversal_2d, planar_order
from lemmas.runner import random_planar_instance

DISKS = [Disk((0.0, 0.0)), Disk((3.0, 0.5)), Disk((6.0, 0.0))]


def test_planar_order():
    line = Line2.through((0.0, 0.2), (1.0, 0.0))
    assert str(planar_order(DISKS, line)) == "ABC"
    assert str(planar_order(DISKS, Line2.through((0.0, 0.2), (-1.0, 0.0)))) == "CBA"
    with pytest.raises(NotATransversal):
        planar_order(DISKS, Line2.through((0.0, 1.2), (1.0, 0.0)))


def test_parallel_transversals_give_the_midline():
    l1 = Line2.through((0.0, 0.2), (1.0, 0.0))
    l2 = Line2.through((0.0, -0.2), (-1.0, 0.0))
    result = interior_transversal_2d(DISKS, l1, l2)
    assert result.clearance == pytest.approx(0.75)
    assert result.line.offset == pytest.approx(0.25)
    assert str(result.order) == "ABC"


def test_identical_lines_are_rejected():
    line = Line2.through((0.0, 0.2), (1.0, 0.0))
    with pytest.raises(InvalidInput):
        interior_transversal_2d(DISKS, line, line)


@pytest.mark.parametrize("k", range(10))
def test_random_instances_have_interior_lines(k):
    disks, l1, l2 = random_planar_instance(make_rng(5, k))
    result = interior_transversal_2d(disks, l1, l2)
    assert result.clearance > 0
    assert result.order == planar_order(disks, l1)
