"""Variable bounds, containment (g1) and overlap (g2) constraints."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import kernels
from .raster import DomainGrid, ObjectSpec, Pose, trig


class ConstraintMode(str, enum.Enum):
    CONSTRAINED = "constrained"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class BoundsSet:
    """Inclusive integer bounds per design variable."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise ValueError("lower and upper bounds differ in length")

    def __len__(self):
        return len(self.lower)

    def __add__(self, other):
        return BoundsSet(tuple(self.lower) + tuple(other.lower),
                         tuple(self.upper) + tuple(other.upper))

    def validate(self):
        for k, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo > hi:
                raise ValueError(f"empty bounds for gene {k}: [{lo}, {hi}]")

    def size(self):
        n = 1
        for lo, hi in zip(self.lower, self.upper):
            n *= max(hi - lo + 1, 0)
        return n

    def contains(self, genes):
        return all(lo <= g <= hi for g, lo, hi in zip(genes, self.lower, self.upper))


@dataclass(frozen=True)
class FeasibilityRecord:
    g1_values: tuple = ()
    g2_value: int = 0
    total_violation: float = 0.0
    feasible: bool = True
    # overlap actually present, reported even when g2 is not enforced
    true_g2: int = 0


def angle_steps(increment):
    """Range of rotation step indices for an angular increment."""
    if increment <= 0:
        raise ValueError("angular increment must be positive")
    n = int(90 // increment)
    return -n, n


def object_bounds(spec: ObjectSpec, H, W, increment=None) -> BoundsSet:
    """Genotype bounds for one object.

    Rotatable rectangles: anchor anywhere in the grid and a rotation step,
    containment left to g1. Fixed rectangles and circles: bounds that keep
    the raster mask inside the grid, so no containment constraint is needed.
    """
    if spec.is_rect:
        if spec.rotatable:
            if increment is None:
                raise ValueError("rotatable rectangle needs an angular increment")
            lo, hi = angle_steps(increment)
            return BoundsSet((1, 1, lo), (H, W, hi))
        return BoundsSet((1, 1), (H - spec.h + 1, W - spec.w + 1))
    r = spec.d // 2
    return BoundsSet((r + 1, r + 1), (H - r, W - r))


def eval_g1(pose: Pose, spec: ObjectSpec, H, W) -> tuple[float, float, float, float]:
    """Containment of a rotated rectangle; every entry <= 0 when inside.

    Entries bound the top, bottom, left and right extremes in that order.
    Negative angles use the column-mirrored form, right angles the exact
    axis-aligned extents.
    """
    if not spec.is_rect:
        raise TypeError("g1 applies to rectangles only")
    i, j, h, w, th = pose.i, pose.j, spec.h, spec.w, pose.theta
    if th == 90:
        return (-i + w + 1, i - H, -j + 1, j + h - W)
    if th == -90:
        return (-i + 1, i + w - H, -j + h + 1, j - W)
    t, c, s = trig(abs(th))
    if th >= 0:
        return (-i + w * s + 1,
                i + h * c - H,
                -j + 1,
                j + w / c + (h - w * t) * s - W)
    # clockwise: anchor is the topmost corner, bottom-left the leftmost
    return (-i + 1,
            i + h * c + w * s - H,
            -j + h * s + 1,
            j + w * c - W)


def eval_g2(grid: DomainGrid) -> int:
    """Cells covered more than once (each counted once)."""
    return int(kernels.stats(grid.cells)[2])


def contained(spec: ObjectSpec, pose: Pose, H, W) -> bool:
    """Containment as the optimiser sees it: g1 or the variable bounds."""
    if spec.is_rect and spec.rotatable:
        return all(v <= 0 for v in eval_g1(pose, spec, H, W))
    b = object_bounds(spec, H, W)
    return b.contains((pose.i, pose.j))


def assess(poses, specs, grid: DomainGrid, mode=ConstraintMode.CONSTRAINED) -> FeasibilityRecord:
    """Merge g1 (rotatable rectangles) and g2 into one feasibility record."""
    if len(poses) != len(specs):
        raise ValueError("poses and specs differ in length")
    g2 = eval_g2(grid)
    if ConstraintMode(mode) is ConstraintMode.UNCONSTRAINED:
        return FeasibilityRecord(true_g2=g2)
    g1 = []
    for p, s in zip(poses, specs):
        if s.is_rect and s.rotatable:
            g1.extend(eval_g1(p, s, grid.H, grid.W))
    viol = float(sum(max(v, 0.0) for v in g1)) + g2
    ok = g2 == 0 and all(v <= 0 for v in g1)
    return FeasibilityRecord(tuple(float(v) for v in g1), g2, viol, ok, g2)
