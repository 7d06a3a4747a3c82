import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compact.objectives import (DomainCenter, ObjectiveKind, eval_A1, eval_DBL, eval_DC, eval_T1,
                                grid_objective, object_center)
from compact.raster import DomainGrid, ObjectSpec, Pose, build_grid, rasterize

from .conftest import a1_oracle


def grid_of(H, W, items):
    specs = [s for s, _ in items]
    return build_grid(H, W, specs, [p for _, p in items])[0]


def test_t1():
    assert eval_T1(DomainGrid.empty(5, 5)) == 0
    assert eval_T1(grid_of(10, 10, [(ObjectSpec.rect("a", 3, 4), Pose(1, 1))])) == 12
    sq = ObjectSpec.rect("s", 3, 3)
    assert eval_T1(grid_of(10, 10, [(sq, Pose(1, 1)), (sq, Pose(2, 2))])) == 10


def test_dc():
    c = DomainCenter.of(101, 101)
    circ = ObjectSpec.circle("c", 5)
    assert eval_DC(Pose(51, 51), circ, c) == 0
    assert eval_DC(Pose(10, 10), circ, c) == 82
    assert eval_DC(Pose(10, 10), circ, c, sense="min") == -82
    r = ObjectSpec.rect("r", 50, 60)
    assert eval_DC(Pose(1, 1), r, DomainCenter.of(100, 100)) == pytest.approx(44)


def test_object_center_matches_raster_centroid():
    for th in (0, 30, 45, -45, 60, 90, -90):
        spec = ObjectSpec.rect("r", 12, 20, True)
        pose = Pose(40, 40, th)
        rows, cols = np.nonzero(rasterize(spec, pose, 100, 100))
        ic, jc = object_center(spec, pose)
        assert abs(rows.mean() + 1 - ic) <= 1.0 and abs(cols.mean() + 1 - jc) <= 1.0


def test_dbl():
    assert eval_DBL(Pose(10, 3)) == 7
    assert eval_DBL(Pose(1, 1)) == 0


def test_a1_examples():
    assert eval_A1(DomainGrid.empty(4, 4)) == 0
    assert eval_A1(grid_of(10, 10, [(ObjectSpec.rect("a", 3, 4), Pose(2, 2))])) == 6
    r = ObjectSpec.rect("r", 2, 4)
    assert eval_A1(grid_of(10, 10, [(r, Pose(1, 1)), (r, Pose(3, 1))])) == 9
    assert eval_A1(grid_of(10, 10, [(r, Pose(1, 1)), (r, Pose(4, 1))])) == 6
    sq = ObjectSpec.rect("s", 3, 3)
    overlap = eval_A1(grid_of(10, 10, [(sq, Pose(1, 1)), (sq, Pose(2, 2))]))
    flush = eval_A1(grid_of(10, 10, [(sq, Pose(1, 1)), (sq, Pose(1, 4))]))
    assert overlap < flush
    with pytest.raises(ValueError):
        eval_A1(DomainGrid.empty(1, 5))


def test_a1_walls_rewards_border_contact():
    r = ObjectSpec.rect("r", 3, 3)
    corner = grid_of(10, 10, [(r, Pose(1, 1))])
    middle = grid_of(10, 10, [(r, Pose(4, 4))])
    assert eval_A1(corner) == eval_A1(middle)
    assert eval_A1(corner, walls=True) > eval_A1(middle, walls=True)
    assert eval_A1(corner, walls=True) == a1_oracle(corner.cells, walls=True)


@settings(max_examples=80, deadline=None)
@given(h1=st.integers(2, 6), w1=st.integers(2, 6), h2=st.integers(2, 6), w2=st.integers(2, 6),
       vertical=st.booleans(), off=st.integers(0, 4))
def test_a1_contact_monotonicity(h1, w1, h2, w2, vertical, off):
    a, b = ObjectSpec.rect("a", h1, w1), ObjectSpec.rect("b", h2, w2)
    pa = Pose(3, 3)
    if vertical:  # b directly below a, shifted right by off
        pb = Pose(3 + h1, 3 + off)
        L = max(0, min(3 + w1, 3 + off + w2) - (3 + off))
    else:  # b directly right of a, shifted down by off
        pb = Pose(3 + off, 3 + w1)
        L = max(0, min(3 + h1, 3 + off + h2) - (3 + off))
    if L < 2:
        return
    both = eval_A1(grid_of(30, 30, [(a, pa), (b, pb)]))
    sep = eval_A1(grid_of(30, 30, [(a, pa)])) + eval_A1(grid_of(30, 30, [(b, pb)]))
    assert both == sep + L - 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 8), st.integers(1, 8), st.integers(-2, 14),
                          st.integers(-2, 14), st.integers(-2, 2)), min_size=1, max_size=4))
def test_a1_bounded_by_t1(objs):
    items = [(ObjectSpec.rect(k, h, w, True), Pose(i, j, s * 45.0))
             for k, (h, w, i, j, s) in enumerate(objs)]
    g = grid_of(15, 15, items)
    assert eval_A1(g) <= eval_T1(g)
    assert eval_A1(g) == a1_oracle(g.cells)


def test_grid_objective_dispatch():
    g = grid_of(10, 10, [(ObjectSpec.rect("a", 3, 4), Pose(2, 2))])
    assert grid_objective(ObjectiveKind.T1, g) == 12
    assert grid_objective("A1", g) == 6
    with pytest.raises(ValueError):
        grid_objective("DBL", g)
