"""Raster (matrix) representation of rectangles and circles on an H x W grid.

Indices are 1-based with row 1 at the top, matching the matrix convention
used throughout the package. Grids are stored as 0-based numpy arrays.

A rectangle pose is its top-left corner plus a counter-clockwise rotation
``theta`` in degrees about that corner; a circle pose is its centre.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels

RECTANGLE = "rectangle"
CIRCLE = "circle"


@dataclass(frozen=True)
class ObjectSpec:
    """Shape descriptor. Rectangles use ``h`` x ``w`` cells, circles ``d``."""

    id: str
    kind: str
    h: int = 0
    w: int = 0
    d: int = 0
    rotatable: bool = False

    def __post_init__(self):
        if self.kind == RECTANGLE:
            if self.h < 1 or self.w < 1:
                raise ValueError(f"rectangle {self.id!r} needs h >= 1 and w >= 1")
        elif self.kind == CIRCLE:
            if self.d < 1:
                raise ValueError(f"circle {self.id!r} needs d >= 1")
        else:
            raise ValueError(f"unknown object kind {self.kind!r}")

    @classmethod
    def rect(cls, id, h, w, rotatable=False):
        return cls(str(id), RECTANGLE, h=int(h), w=int(w), rotatable=bool(rotatable))

    @classmethod
    def circle(cls, id, d):
        return cls(str(id), CIRCLE, d=int(d))

    @property
    def is_rect(self):
        return self.kind == RECTANGLE

    @property
    def diagonal(self) -> float:
        """Ordering key: rectangle diagonal, circle diameter."""
        return math.hypot(self.h, self.w) if self.is_rect else float(self.d)

    @property
    def area(self) -> float:
        """Ordering key: nominal (continuous) area."""
        return float(self.h * self.w) if self.is_rect else math.pi * self.d ** 2 / 4


@dataclass(frozen=True)
class Pose:
    """Integer anchor (top-left for rectangles, centre for circles) and angle."""

    i: int
    j: int
    theta: float = 0.0

    def __post_init__(self):
        if not -90.0 <= self.theta <= 90.0:
            raise ValueError(f"theta {self.theta} outside [-90, 90]")


@dataclass(frozen=True, eq=False)
class DomainGrid:
    """H x W occupancy counts. Treated as immutable once built."""

    cells: np.ndarray = field(repr=False)

    @classmethod
    def empty(cls, H, W):
        if H < 1 or W < 1:
            raise ValueError("grid dimensions must be positive")
        return cls(np.zeros((int(H), int(W)), dtype=np.int32))

    @property
    def H(self):
        return self.cells.shape[0]

    @property
    def W(self):
        return self.cells.shape[1]

    @property
    def shape(self):
        return self.cells.shape

    def __eq__(self, other):
        return isinstance(other, DomainGrid) and np.array_equal(self.cells, other.cells)

    __hash__ = None


@lru_cache(maxsize=4096)
def trig(theta):
    """``(tan, cos, sin)`` of an angle in degrees, exact at 0."""
    if theta == 0:
        return 0.0, 1.0, 0.0
    rad = math.radians(theta)
    return math.tan(rad), math.cos(rad), math.sin(rad)


def shape_params(spec: ObjectSpec, pose: Pose) -> np.ndarray:
    """Kernel parameter row for one object at one pose."""
    if not spec.is_rect:
        return np.array([kernels.CIRCLE, spec.d, spec.d, pose.i, pose.j, 0, 1, 0], dtype=float)
    h, w, th = spec.h, spec.w, pose.theta
    if th == 0:
        return np.array([kernels.BLOCK, h, w, pose.i, pose.j, 0, 1, 0], dtype=float)
    if th == 90:
        # left edge runs right along the row, top edge runs up
        return np.array([kernels.BLOCK, w, h, pose.i - w, pose.j, 0, 1, 0], dtype=float)
    if th == -90:
        return np.array([kernels.BLOCK, w, h, pose.i, pose.j - h, 0, 1, 0], dtype=float)
    t, c, s = trig(th)
    return np.array([kernels.RECT, h, w, pose.i, pose.j, t, c, s], dtype=float)


def layout_params(specs, poses) -> np.ndarray:
    if len(specs) != len(poses):
        raise ValueError("specs and poses differ in length")
    if not specs:
        return np.zeros((0, 8))
    return np.vstack([shape_params(s, p) for s, p in zip(specs, poses)])


def _mask(params, H, W):
    r0, c0, m = kernels.footprint(params, H, W)
    out = np.zeros((H, W), dtype=np.uint8)
    if m.size:
        out[r0 - 1:r0 - 1 + m.shape[0], c0 - 1:c0 - 1 + m.shape[1]] = m
    return out


def rasterize_rect(spec: ObjectSpec, pose: Pose, H: int, W: int) -> np.ndarray:
    """Binary H x W mask of a rectangle, clipped to the grid.

    The bottom-right corner is snapped to the nearest cell and each edge is
    a rounded line through a corner; a cell is inside when it is on or below
    the top edge, above the bottom edge, on or right of the left edge and
    left of the right edge. Never raises for out-of-grid poses.
    """
    if not spec.is_rect:
        raise TypeError("rasterize_rect needs a rectangle spec")
    return _mask(shape_params(spec, pose), H, W)


def rasterize_circle(spec: ObjectSpec, pose: Pose, H: int, W: int) -> np.ndarray:
    """Binary mask of cells whose distance to the centre is <= d/2."""
    if spec.is_rect:
        raise TypeError("rasterize_circle needs a circle spec")
    return _mask(shape_params(spec, pose), H, W)


def rasterize(spec: ObjectSpec, pose: Pose, H: int, W: int) -> np.ndarray:
    return _mask(shape_params(spec, pose), H, W)


def accumulate(grid: DomainGrid, mask: np.ndarray) -> DomainGrid:
    """Elementwise sum of the grid and a mask; returns a new grid."""
    mask = np.asarray(mask)
    if mask.shape != grid.shape:
        raise ValueError(f"mask shape {mask.shape} does not match grid {grid.shape}")
    return DomainGrid(grid.cells + mask.astype(np.int32))


def build_grid(H, W, specs, poses) -> tuple[DomainGrid, np.ndarray]:
    """Paint every object; returns the grid and the per-object popcounts."""
    g = np.zeros((H, W), dtype=np.int32)
    counts = kernels.paint(g, layout_params(specs, poses))
    return DomainGrid(g), np.asarray(counts)


def coverage_stats(grid: DomainGrid) -> tuple[int, int, int]:
    """``(n_exactly_one, n_covered, n_overlapped)``."""
    return tuple(int(v) for v in kernels.stats(grid.cells))


def filling_ratio(grid: DomainGrid) -> float:
    return coverage_stats(grid)[1] / (grid.H * grid.W)


def unclipped_popcount(spec: ObjectSpec, pose: Pose) -> int:
    """Popcount of the mask on a grid large enough to hold it without clipping."""
    p = shape_params(spec, pose)
    ext = spec.h + spec.w + spec.d + 8
    shifted = p.copy()
    shifted[3] += ext
    shifted[4] += ext
    size = int(max(abs(pose.i), abs(pose.j))) + 3 * ext
    return int(kernels.footprint(shifted, size, size)[2].sum())
