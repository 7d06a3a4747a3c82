# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled raster kernels; mirror of ``_kernels_py`` (same floating point order)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor, ceil

cnp.import_array()

NAME = "cython"

cdef enum:
    RECT = 0
    BLOCK = 1
    CIRCLE = 2
    PAD = 3


cdef inline double _min4(double a, double b, double c, double d) nogil:
    if b < a: a = b
    if c < a: a = c
    if d < a: a = d
    return a


cdef inline double _max4(double a, double b, double c, double d) nogil:
    if b > a: a = b
    if c > a: a = c
    if d > a: a = d
    return a


cdef struct Box:
    long r_lo, r_hi, c_lo, c_hi


cdef inline Box _box(const double[:] p, long H, long W) nogil:
    cdef Box bx
    cdef int kind = <int>p[0]
    cdef double a = p[1], b = p[2], i = p[3], j = p[4], c = p[6], s = p[7]
    cdef long rad
    if kind == RECT:
        bx.r_lo = <long>floor(_min4(i, i - b * s, i + a * c, i + a * c - b * s)) - PAD
        bx.r_hi = <long>ceil(_max4(i, i - b * s, i + a * c, i + a * c - b * s)) + PAD
        bx.c_lo = <long>floor(_min4(j, j + b * c, j + a * s, j + a * s + b * c)) - PAD
        bx.c_hi = <long>ceil(_max4(j, j + b * c, j + a * s, j + a * s + b * c)) + PAD
    elif kind == BLOCK:
        bx.r_lo = <long>i
        bx.r_hi = <long>(i + a) - 1
        bx.c_lo = <long>j
        bx.c_hi = <long>(j + b) - 1
    else:
        rad = (<long>a) // 2
        bx.r_lo = <long>i - rad
        bx.r_hi = <long>i + rad
        bx.c_lo = <long>j - rad
        bx.c_hi = <long>j + rad
    if bx.r_lo < 1: bx.r_lo = 1
    if bx.c_lo < 1: bx.c_lo = 1
    if bx.r_hi > H: bx.r_hi = H
    if bx.c_hi > W: bx.c_hi = W
    return bx


cdef inline bint _inside(const double[:] p, long r, long q, double it, double jt) nogil:
    cdef int kind = <int>p[0]
    cdef double i = p[3], j = p[4], t = p[5]
    cdef double il, iu, jl, ju
    cdef long di, dj, d
    if kind == BLOCK:
        return True
    if kind == CIRCLE:
        di = <long>i - r
        dj = <long>j - q
        d = <long>p[1]
        return 4 * (di * di + dj * dj) <= d * d
    il = floor(i - t * (<double>q - j) + 0.5)
    iu = floor(it - t * (<double>q - jt) + 0.5)
    jl = floor(j + t * (<double>r - i) + 0.5)
    ju = floor(jt + t * (<double>r - it) + 0.5)
    return r >= il and r < iu and q >= jl and q < ju


cdef inline void _corner(const double[:] p, double* it, double* jt) nogil:
    cdef double h = p[1], w = p[2], i = p[3], j = p[4], c = p[6], s = p[7]
    it[0] = floor(i + h * c - w * s + 0.5)
    jt[0] = floor(j + h * s + w * c + 0.5)


def footprint(const double[:] p, long H, long W):
    cdef Box bx = _box(p, H, W)
    cdef double it = 0.0, jt = 0.0
    cdef long r, q
    if bx.r_lo > bx.r_hi or bx.c_lo > bx.c_hi:
        return 1, 1, np.zeros((0, 0), dtype=np.uint8)
    out = np.zeros((bx.r_hi - bx.r_lo + 1, bx.c_hi - bx.c_lo + 1), dtype=np.uint8)
    cdef cnp.uint8_t[:, :] m = out
    if <int>p[0] == RECT:
        _corner(p, &it, &jt)
    with nogil:
        for r in range(bx.r_lo, bx.r_hi + 1):
            for q in range(bx.c_lo, bx.c_hi + 1):
                if _inside(p, r, q, it, jt):
                    m[r - bx.r_lo, q - bx.c_lo] = 1
    return bx.r_lo, bx.c_lo, out


cdef long _paint_one(int[:, :] g, const double[:] p, int delta) nogil:
    cdef long H = g.shape[0], W = g.shape[1]
    cdef Box bx = _box(p, H, W)
    cdef double it = 0.0, jt = 0.0
    cdef long r, q, n = 0
    if <int>p[0] == RECT:
        _corner(p, &it, &jt)
    for r in range(bx.r_lo, bx.r_hi + 1):
        for q in range(bx.c_lo, bx.c_hi + 1):
            if _inside(p, r, q, it, jt):
                g[r - 1, q - 1] += delta
                n += 1
    return n


def paint(int[:, :] grid, const double[:, :] params, int delta=1):
    cdef Py_ssize_t k, n = params.shape[0]
    out = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:] counts = out
    with nogil:
        for k in range(n):
            counts[k] = _paint_one(grid, params[k], delta)
    return out


def overlap(const int[:, :] grid, const double[:] p):
    cdef long H = grid.shape[0], W = grid.shape[1]
    cdef Box bx = _box(p, H, W)
    cdef double it = 0.0, jt = 0.0
    cdef long r, q, n = 0, hit = 0
    if <int>p[0] == RECT:
        _corner(p, &it, &jt)
    with nogil:
        for r in range(bx.r_lo, bx.r_hi + 1):
            for q in range(bx.c_lo, bx.c_hi + 1):
                if _inside(p, r, q, it, jt):
                    n += 1
                    if grid[r - 1, q - 1] > 0:
                        hit += 1
    return n, hit


def stats(const int[:, :] grid):
    cdef Py_ssize_t r, q
    cdef long n1 = 0, ncov = 0, nover = 0
    cdef int v
    with nogil:
        for r in range(grid.shape[0]):
            for q in range(grid.shape[1]):
                v = grid[r, q]
                if v >= 1:
                    ncov += 1
                    if v == 1:
                        n1 += 1
                    else:
                        nover += 1
    return n1, ncov, nover


cdef inline bint _one(const int[:, :] g, long r, long q, bint walls) nogil:
    # 1-based (r, q); outside the grid counts as occupied only with walls
    if r < 1 or q < 1 or r > g.shape[0] or q > g.shape[1]:
        return walls
    return g[r - 1, q - 1] == 1


cdef long _a1(const int[:, :] g, long r_lo, long r_hi, long c_lo, long c_hi, bint walls) nogil:
    cdef long H = g.shape[0], W = g.shape[1], r, q, n = 0
    cdef long first = 0 if walls else 1
    cdef long last_r = H if walls else H - 1
    cdef long last_c = W if walls else W - 1
    if r_lo < first: r_lo = first
    if c_lo < first: c_lo = first
    if r_hi > last_r: r_hi = last_r
    if c_hi > last_c: c_hi = last_c
    if not walls:
        for r in range(r_lo - 1, r_hi):
            for q in range(c_lo - 1, c_hi):
                if g[r, q] == 1 and g[r + 1, q] == 1 and g[r, q + 1] == 1 and g[r + 1, q + 1] == 1:
                    n += 1
        return n
    for r in range(r_lo, r_hi + 1):
        for q in range(c_lo, c_hi + 1):
            if (_one(g, r, q, 1) and _one(g, r + 1, q, 1) and _one(g, r, q + 1, 1)
                    and _one(g, r + 1, q + 1, 1)):
                n += 1
    return n


def a1(const int[:, :] grid, r_lo=None, r_hi=None, c_lo=None, c_hi=None, bint walls=False):
    cdef long first = 0 if walls else 1
    cdef long rl = first if r_lo is None else r_lo
    cdef long cl = first if c_lo is None else c_lo
    cdef long rh = (grid.shape[0] - (0 if walls else 1)) if r_hi is None else r_hi
    cdef long ch = (grid.shape[1] - (0 if walls else 1)) if c_hi is None else c_hi
    return _a1(grid, rl, rh, cl, ch, walls)


def a1_gain(int[:, :] grid, const double[:] p, bint walls=False):
    cdef long H = grid.shape[0], W = grid.shape[1]
    cdef Box bx = _box(p, H, W)
    cdef long before, after
    if bx.r_lo > bx.r_hi or bx.c_lo > bx.c_hi:
        return 0
    with nogil:
        before = _a1(grid, bx.r_lo - 1, bx.r_hi, bx.c_lo - 1, bx.c_hi, walls)
        _paint_one(grid, p, 1)
        after = _a1(grid, bx.r_lo - 1, bx.r_hi, bx.c_lo - 1, bx.c_hi, walls)
        _paint_one(grid, p, -1)
    return after - before
