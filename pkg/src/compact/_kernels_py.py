"""Pure numpy implementation of the raster kernels.

Every routine here has a twin in ``_ckernels.pyx``; the two must agree
bit for bit. Floating point expressions are written in the same order in
both files so that IEEE rounding is identical.

Shape parameter rows (``params``) are float64 vectors of length 8::

    kind, a, b, i, j, t, c, s

kind 0 -> rotated rectangle (a=h, b=w, anchor (i, j), tan/cos/sin = t, c, s)
kind 1 -> axis-aligned block (a rows, b cols, top-left (i, j))
kind 2 -> circle (a = diameter, centre (i, j))

All coordinates are 1-based; grids are stored 0-based.
"""
import math

import numpy as np

NAME = "python"

RECT, BLOCK, CIRCLE = 0, 1, 2
_PAD = 3


def _rect_box(h, w, i_r, j_r, t, c, s):
    ci = (i_r, i_r - w * s, i_r + h * c, i_r + h * c - w * s)
    cj = (j_r, j_r + w * c, j_r + h * s, j_r + h * s + w * c)
    return (math.floor(min(ci)) - _PAD, math.ceil(max(ci)) + _PAD,
            math.floor(min(cj)) - _PAD, math.ceil(max(cj)) + _PAD)


def _rect_cells(h, w, i_r, j_r, t, c, s, rows, cols):
    it = math.floor(i_r + h * c - w * s + 0.5)
    jt = math.floor(j_r + h * s + w * c + 0.5)
    il = np.floor(i_r - t * (cols - j_r) + 0.5)
    iu = np.floor(it - t * (cols - jt) + 0.5)
    jl = np.floor(j_r + t * (rows - i_r) + 0.5)
    ju = np.floor(jt + t * (rows - it) + 0.5)
    return (rows >= il) & (rows < iu) & (cols >= jl) & (cols < ju)


def footprint(p, H, W):
    """Clipped bounding-box mask of one shape: ``(r0, c0, mask)``.

    ``r0``/``c0`` are the 1-based grid coordinates of ``mask[0, 0]``.
    """
    kind = int(p[0])
    a, b, i, j = p[1], p[2], p[3], p[4]
    if kind == RECT:
        r_lo, r_hi, c_lo, c_hi = _rect_box(a, b, i, j, p[5], p[6], p[7])
    elif kind == BLOCK:
        r_lo, r_hi, c_lo, c_hi = int(i), int(i + a) - 1, int(j), int(j + b) - 1
    else:
        rad = int(a) // 2
        r_lo, r_hi, c_lo, c_hi = int(i) - rad, int(i) + rad, int(j) - rad, int(j) + rad
    r_lo, c_lo = max(r_lo, 1), max(c_lo, 1)
    r_hi, c_hi = min(r_hi, H), min(c_hi, W)
    if r_lo > r_hi or c_lo > c_hi:
        return 1, 1, np.zeros((0, 0), dtype=np.uint8)
    rows = np.arange(r_lo, r_hi + 1, dtype=np.int64)[:, None]
    cols = np.arange(c_lo, c_hi + 1, dtype=np.int64)[None, :]
    if kind == RECT:
        m = _rect_cells(a, b, i, j, p[5], p[6], p[7], rows, cols)
    elif kind == BLOCK:
        m = np.ones((r_hi - r_lo + 1, c_hi - c_lo + 1), dtype=bool)
    else:
        di = int(i) - rows
        dj = int(j) - cols
        m = 4 * (di * di + dj * dj) <= int(a) * int(a)
    return r_lo, c_lo, m.astype(np.uint8)


def paint(grid, params, delta=1):
    """Add ``delta`` under every shape in ``params``; returns per-shape popcounts."""
    H, W = grid.shape
    counts = np.zeros(len(params), dtype=np.int64)
    for k, p in enumerate(params):
        r0, c0, m = footprint(p, H, W)
        if m.size:
            grid[r0 - 1:r0 - 1 + m.shape[0], c0 - 1:c0 - 1 + m.shape[1]] += delta * m
            counts[k] = int(m.sum())
    return counts


def overlap(grid, p):
    """Return ``(popcount, cells already occupied)`` for one shape over ``grid``."""
    H, W = grid.shape
    r0, c0, m = footprint(p, H, W)
    if not m.size:
        return 0, 0
    sub = grid[r0 - 1:r0 - 1 + m.shape[0], c0 - 1:c0 - 1 + m.shape[1]]
    return int(m.sum()), int(np.count_nonzero((sub > 0) & (m > 0)))


def stats(grid):
    """``(cells == 1, cells >= 1, cells > 1)``."""
    return (int(np.count_nonzero(grid == 1)), int(np.count_nonzero(grid >= 1)),
            int(np.count_nonzero(grid > 1)))


def a1(grid, r_lo=None, r_hi=None, c_lo=None, c_hi=None, walls=False):
    """Count all-exactly-one 2x2 windows whose top-left cell lies in the box.

    With ``walls`` the grid is framed by a border of occupied cells, so
    windows may start on row/column 0 and end on row H+1 / column W+1.
    """
    H, W = grid.shape
    first = 0 if walls else 1
    last_r, last_c = (H, W) if walls else (H - 1, W - 1)
    r_lo = first if r_lo is None else max(r_lo, first)
    c_lo = first if c_lo is None else max(c_lo, first)
    r_hi = last_r if r_hi is None else min(r_hi, last_r)
    c_hi = last_c if c_hi is None else min(c_hi, last_c)
    if r_lo > r_hi or c_lo > c_hi:
        return 0
    b = grid == 1
    if walls:
        b = np.pad(b, 1, constant_values=True)
        b = b[r_lo:r_hi + 2, c_lo:c_hi + 2]
    else:
        b = b[r_lo - 1:r_hi + 1, c_lo - 1:c_hi + 1]
    f = b[:-1, :-1] & b[1:, :-1] & b[:-1, 1:] & b[1:, 1:]
    return int(np.count_nonzero(f))


def a1_gain(grid, p, walls=False):
    """Change in A1 if the shape were painted onto ``grid`` (grid left untouched)."""
    H, W = grid.shape
    r0, c0, m = footprint(p, H, W)
    if not m.size:
        return 0
    r1, c1 = r0 + m.shape[0] - 1, c0 + m.shape[1] - 1
    before = a1(grid, r0 - 1, r1, c0 - 1, c1, walls)
    sub = grid[r0 - 1:r1, c0 - 1:c1]
    sub += m
    after = a1(grid, r0 - 1, r1, c0 - 1, c1, walls)
    sub -= m
    return after - before
