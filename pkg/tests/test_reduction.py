from __future__ import annotations

import logging

import pytest

from sphcoh.errors import NeedsFullLocalReduction, NonPositive, WallLimitExceeded
from sphcoh.filtration import Factor, Shape
from sphcoh.mukai import O_X, O_X_SHIFT, MukaiVector, dualize
from sphcoh.rank2 import Rank2Wall
from sphcoh.reduction import cohomology, cross_wall, next_wall, read_cohomology
from sphcoh.walls import actual_walls

V = MukaiVector
HEIGHT_THREE = V(1340641, 1733695, 2241986)
EASY = Rank2Wall(1, V(5, 2, 1), V(-1, 0, -1), 6)


def pairs(shape: Shape):
    return [(f.cls, f.mult) for f in shape]


@pytest.mark.parametrize(
    "v, h",
    [
        (V(305, 477, 746), (1240, 189)),
        (HEIGHT_THREE, (4391850, 809223)),
        (V(10, 13, 17), (33, 6)),
        (V(195562, 59615, 18173), (213735, 0)),
        (V(1, 1, 2), (3, 0)),
    ],
)
def test_driver_examples(v, h):
    res = cohomology(1, v)
    assert (res.h0, res.h1, res.h2) == (*h, 0)
    assert res.chi == v.r + v.a


def test_three_step_example_is_reported():
    with pytest.raises(NeedsFullLocalReduction) as info:
        cohomology(1, V(42687466, 66760513, 104409245))
    exc = info.value
    assert exc.code == "needs-full-local-reduction"
    assert len({f.cls for f in exc.segment}) >= 3
    assert exc.trace.g_values() == [139959, 155, 3]


def test_dual_input_swaps_h0_and_h2():
    res = cohomology(1, dualize(V(305, 477, 746)))
    assert res.transform.dualized
    assert (res.h0, res.h1) == (1240, 189)
    assert res.input_cohomology == (0, 189, 1240)


def test_structure_sheaf():
    res = cohomology(1, O_X)
    assert (res.h0, res.h1, res.h2) == (1, 0, 1)
    assert len(res.trace) == 0


def test_negative_rank_rejected():
    with pytest.raises(NonPositive):
        cohomology(1, V(-5, 12, -29))


def test_wall_limit():
    with pytest.raises(WallLimitExceeded):
        cohomology(1, HEIGHT_THREE, max_walls=2)


def test_next_wall_on_a_single_factor():
    circle, lattice, seg = next_wall(1, Shape((Factor(V(305, 477, 746), 1),)), None)
    assert (lattice.s0, lattice.t1, lattice.g) == (V(2, 3, 5), V(-5, 12, -29), 155)
    assert seg == (0, 0)


def test_height_three_walls_in_order():
    res = cohomology(1, HEIGHT_THREE)
    first, second, third = res.trace.steps
    # the second wall is the top actual wall of S0 of the first one
    s0 = first.lattice.s0
    assert second.wall_key == actual_walls(1, s0, first.wall_key)[0]
    assert second.segment_range == (0, 0)
    # the third is shared by T1 and the new T1, and takes both
    assert third.segment_range == (1, 2)
    assert third.rule == "two_step"
    assert third.note.startswith("branch")
    assert first.wall_key > second.wall_key > third.wall_key


def test_trace_shapes_conserve_class_and_phase_order():
    v = HEIGHT_THREE
    res = cohomology(1, v)
    for step in res.trace:
        assert step.shape_before.total() == v
        assert step.shape_after.total() == v
        assert step.shape_after.in_phase_order(1, step.wall_key)
    assert res.terminal[-1].cls == O_X_SHIFT


def test_cross_wall_examples():
    seg = Shape((Factor(O_X_SHIFT, 155), Factor(V(-5, 12, -29), 1)))
    shape, rule = cross_wall(EASY, seg)
    assert pairs(shape) == [(V(29, 12, 5), 1), (O_X_SHIFT, 189)] and rule == "type2"

    w = Rank2Wall(1, V(2, 3, 5), V(-5, 12, -29), 155)
    shape, rule = cross_wall(w, Shape((Factor(V(305, 477, 746), 1),)))
    assert pairs(shape) == [(V(2, 3, 5), 155), (V(-5, 12, -29), 1)] and rule == "jh"

    shape, rule = cross_wall(w, Shape((Factor(w.s0, 1),)))
    assert pairs(shape) == [(w.s0, 1)] and rule == "reorder"


def test_cross_wall_with_three_classes_needs_full_reduction():
    seg = Shape((Factor(EASY.t1, 1), Factor(V(-5, 12, -29), 1), Factor(EASY.s0, 1)))
    with pytest.raises(NeedsFullLocalReduction):
        cross_wall(EASY, seg)


def test_terminal_shape_reading():
    terminal = cohomology(1, V(305, 477, 746)).terminal
    c = read_cohomology(1, terminal)
    assert (c.h0, c.h1) == (1240, 189)
    assert terminal[-1] == Factor(O_X_SHIFT, 189, terminal[-1].label)
    with pytest.raises(AssertionError):
        read_cohomology(1, Shape((Factor(O_X_SHIFT, 2), Factor(V(1, 1, 2), 1))))


def test_wall_crossings_are_logged(caplog):
    with caplog.at_level(logging.DEBUG, logger="sphcoh"):
        cohomology(1, V(305, 477, 746))
    assert any("g=155" in r.getMessage() for r in caplog.records)
