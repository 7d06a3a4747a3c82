import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compact import _kernels_py, kernels
from compact.raster import (DomainGrid, ObjectSpec, Pose, accumulate, build_grid, coverage_stats,
                            filling_ratio, layout_params, rasterize, rasterize_circle,
                            rasterize_rect, shape_params, unclipped_popcount)

from .conftest import circle_oracle, rect_oracle


def test_axis_aligned_block():
    m = rasterize_rect(ObjectSpec.rect("a", 3, 4), Pose(8, 2), 10, 10)
    assert m.sum() == 12
    assert m[7:10, 1:5].all()


@pytest.mark.parametrize("H,count", [(20, 92), (50, 595), (100, 2414)])
def test_fig2_counts_at_every_contained_anchor(H, count):
    h = round(0.4 * H)
    spec = ObjectSpec.rect("r", h, round(1.5 * h), rotatable=True)
    seen = set()
    for i in range(1, H + 1, max(1, H // 20)):
        for j in range(1, H + 1, max(1, H // 20)):
            m = rasterize_rect(spec, Pose(i, j, 30), H, H)
            if unclipped_popcount(spec, Pose(i, j, 30)) == m.sum():
                seen.add(int(m.sum()))
    assert seen == {count}


@pytest.mark.parametrize("theta", [0, 15, 30, 45, 60, 75])
def test_rect_matches_dense_oracle(theta):
    rng = np.random.default_rng(theta)
    for _ in range(25):
        h, w = rng.integers(1, 9, size=2)
        i, j = rng.integers(-3, 16, size=2)
        spec = ObjectSpec.rect("r", int(h), int(w), rotatable=True)
        got = rasterize_rect(spec, Pose(int(i), int(j), theta), 14, 14)
        want = rect_oracle(int(h), int(w), int(i), int(j), theta, 14, 14)
        assert np.array_equal(got, want)


def test_negative_angle_is_column_mirror_of_geometry():
    spec = ObjectSpec.rect("r", 6, 9, rotatable=True)
    m = rasterize_rect(spec, Pose(10, 25, -30), 30, 40)
    assert m.sum() == unclipped_popcount(spec, Pose(10, 25, -30))
    # the anchor is the topmost corner and the object lies left-down of it
    rows, cols = np.nonzero(m)
    assert rows.min() + 1 >= 10 - 1
    assert cols.min() + 1 < 25


def test_right_angles_are_exact_blocks():
    spec = ObjectSpec.rect("r", 3, 5, rotatable=True)
    up = rasterize_rect(spec, Pose(10, 4, 90), 12, 12)
    assert up.sum() == 15 and up[4:9, 3:6].all()
    down = rasterize_rect(spec, Pose(2, 6, -90), 12, 12)
    assert down.sum() == 15 and down[1:6, 2:5].all()


@pytest.mark.parametrize("d,center,count", [(7, (4, 7), 37), (1, (5, 5), 1), (2, (5, 5), 5)])
def test_circle_counts(d, center, count):
    m = rasterize_circle(ObjectSpec.circle("c", d), Pose(*center), 12, 12)
    assert m.sum() == count
    assert np.array_equal(m, circle_oracle(d, *center, 12, 12))


def test_circle_symmetry():
    for d in range(1, 22):
        m = rasterize_circle(ObjectSpec.circle("c", d), Pose(15, 15), 29, 29)
        assert np.array_equal(m, m[:, ::-1]) and np.array_equal(m, m[::-1, :])


def test_out_of_grid_pose_is_clipped_not_error():
    m = rasterize(ObjectSpec.rect("r", 5, 5, True), Pose(-50, 80, 30), 10, 10)
    assert m.shape == (10, 10) and m.sum() == 0


@settings(max_examples=60, deadline=None)
@given(h=st.integers(1, 12), w=st.integers(1, 12), step=st.integers(-6, 6),
       di=st.integers(0, 7), dj=st.integers(0, 7))
def test_translation_invariance(h, w, step, di, dj):
    spec = ObjectSpec.rect("r", h, w, rotatable=True)
    p0 = Pose(20, 20, step * 15.0)
    p1 = Pose(20 + di, 20 + dj, step * 15.0)
    a = rasterize(spec, p0, 60, 60)
    b = rasterize(spec, p1, 60, 60)
    assert np.array_equal(np.roll(np.roll(a, di, 0), dj, 1), b)


def test_accumulate():
    g = DomainGrid.empty(10, 10)
    m = rasterize_rect(ObjectSpec.rect("a", 3, 4), Pose(8, 2), 10, 10)
    g1 = accumulate(g, m)
    assert (g1.cells == 1).sum() == 12
    assert (accumulate(g1, m).cells[m == 1] == 2).all()
    with pytest.raises(ValueError):
        accumulate(g, np.zeros((3, 3)))


def test_overlapping_squares_stats():
    sq = ObjectSpec.rect("s", 3, 3)
    g, counts = build_grid(10, 10, [sq, sq], [Pose(1, 1), Pose(2, 2)])
    assert list(counts) == [9, 9]
    assert coverage_stats(g) == (10, 14, 4)
    assert coverage_stats(DomainGrid.empty(5, 5)) == (0, 0, 0)


def test_fig5a_perfect_fill():
    dims = [(50, 60), (50, 40), (30, 100), (20, 100)]
    specs = [ObjectSpec.rect(k, h, w) for k, (h, w) in enumerate(dims)]
    g, _ = build_grid(100, 100, specs, [Pose(1, 1), Pose(1, 61), Pose(51, 1), Pose(81, 1)])
    assert coverage_stats(g) == (10000, 10000, 0)
    assert filling_ratio(g) == 1.0


def test_backends_agree():
    rng = np.random.default_rng(5)
    for _ in range(400):
        if rng.random() < 0.3:
            spec = ObjectSpec.circle("c", int(rng.integers(1, 15)))
            pose = Pose(int(rng.integers(-5, 30)), int(rng.integers(-5, 30)))
        else:
            spec = ObjectSpec.rect("r", int(rng.integers(1, 15)), int(rng.integers(1, 15)), True)
            pose = Pose(int(rng.integers(-5, 30)), int(rng.integers(-5, 30)),
                        float(rng.integers(-6, 7) * 15))
        p = shape_params(spec, pose)
        r0, c0, m = kernels.footprint(p, 25, 25)
        r1, c1, m1 = _kernels_py.footprint(p, 25, 25)
        assert np.array_equal(np.asarray(m), m1) and (m.size == 0 or (r0, c0) == (r1, c1))
        g = np.zeros((25, 25), np.int32)
        kernels.paint(g, layout_params([spec, spec], [pose, Pose(12, 12)]))
        assert kernels.a1(g) == _kernels_py.a1(g)
        assert kernels.a1(g, walls=True) == _kernels_py.a1(g, walls=True)
        assert tuple(kernels.stats(g)) == tuple(_kernels_py.stats(g))
