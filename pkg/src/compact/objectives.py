"""The four packing metrics. All are maximised by the optimiser."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import kernels
from .raster import DomainGrid, ObjectSpec, Pose, trig


class ObjectiveKind(str, enum.Enum):
    T1 = "T1"   # total exactly-one cells
    DC = "DC"   # rectilinear distance of object centre from domain centre
    DBL = "DBL"  # negated distance to the bottom-left corner
    A1 = "A1"   # all-ones 2x2 windows (contact)


@dataclass(frozen=True)
class DomainCenter:
    i_center: float
    j_center: float

    @classmethod
    def of(cls, H, W):
        return cls((H + 1) / 2, (W + 1) / 2)


def eval_T1(grid: DomainGrid) -> int:
    """Cells covered by exactly one object; overlapped cells score nothing."""
    return int(kernels.stats(grid.cells)[0])


def object_center(spec: ObjectSpec, pose: Pose) -> tuple[float, float]:
    if not spec.is_rect:
        return float(pose.i), float(pose.j)
    _, c, s = _cos_sin(pose.theta)
    return (pose.i + spec.h / 2 * c - spec.w / 2 * s,
            pose.j + spec.h / 2 * s + spec.w / 2 * c)


def _cos_sin(theta):
    if theta == 90:
        return None, 0.0, 1.0
    if theta == -90:
        return None, 0.0, -1.0
    return trig(theta)


def eval_DC(pose: Pose, spec: ObjectSpec, center: DomainCenter, sense: str = "max") -> float:
    """Manhattan distance between object centre and domain centre.

    With ``sense="min"`` the negated distance is returned so that a
    maximiser pulls objects towards the middle instead.
    """
    ic, jc = object_center(spec, pose)
    dist = abs(ic - center.i_center) + abs(jc - center.j_center)
    return dist if sense == "max" else -dist


def eval_DBL(pose: Pose, spec: ObjectSpec | None = None) -> float:
    """``i - j`` of the anchor: larger means closer to the bottom-left."""
    return float(pose.i - pose.j)


def eval_A1(grid: DomainGrid, walls: bool = False) -> int:
    """Number of 2x2 windows whose four cells are each covered exactly once.

    ``walls=True`` frames the grid with occupied cells so that contact with
    the domain border also scores.
    """
    if grid.H < 2 or grid.W < 2:
        raise ValueError("A1 needs at least a 2 x 2 grid")
    return int(kernels.a1(grid.cells, walls=walls))


def grid_objective(kind: ObjectiveKind, grid: DomainGrid, walls: bool = False) -> int:
    kind = ObjectiveKind(kind)
    if kind is ObjectiveKind.T1:
        return eval_T1(grid)
    if kind is ObjectiveKind.A1:
        return eval_A1(grid, walls)
    raise ValueError(f"{kind.value} is not a grid objective")
