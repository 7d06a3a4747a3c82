"""Design-vector coding and the concurrent / ordered packing strategies."""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constraints import (BoundsSet, ConstraintMode, FeasibilityRecord, assess, contained,
                          eval_g1, object_bounds)
from .ga import EvalResult, GAConfig, exhaustive_search, run_ga
from .objectives import DomainCenter, ObjectiveKind, eval_DBL, eval_DC
from .raster import DomainGrid, ObjectSpec, Pose, coverage_stats, layout_params, shape_params


class Strategy(str, enum.Enum):
    CONCURRENT = "concurrent"
    ORDERED = "ordered"


class Solver(str, enum.Enum):
    GA = "ga"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class OrderingRule:
    key: str = "diagonal"          # diagonal | area
    direction: str = "descending"  # descending | ascending

    def __post_init__(self):
        if self.key not in ("diagonal", "area"):
            raise ValueError(f"unknown ordering key {self.key!r}")
        if self.direction not in ("descending", "ascending"):
            raise ValueError(f"unknown ordering direction {self.direction!r}")

    def order(self, specs) -> list[int]:
        """Indices of ``specs`` in placement order; equal keys keep input order."""
        keyf = (lambda s: s.diagonal) if self.key == "diagonal" else (lambda s: s.area)
        sign = -1 if self.direction == "descending" else 1
        return sorted(range(len(specs)), key=lambda k: (sign * keyf(specs[k]), k))


# ---------------------------------------------------------------- design vector

def _gene_order(specs):
    """Rectangles first, then circles, each group in input order."""
    rects = [k for k, s in enumerate(specs) if s.is_rect]
    circles = [k for k, s in enumerate(specs) if not s.is_rect]
    return rects + circles


def _n_genes(spec):
    return 3 if spec.is_rect and spec.rotatable else 2


def vector_length(specs):
    return sum(_n_genes(s) for s in specs)


def design_bounds(specs, H, W, angular_increment) -> BoundsSet:
    b = BoundsSet((), ())
    for k in _gene_order(specs):
        b = b + object_bounds(specs[k], H, W, angular_increment)
    return b


def decode(x, specs, angular_increment) -> list[Pose]:
    """Design vector -> poses in ``specs`` order; rotation = step * increment."""
    if len(x) != vector_length(specs):
        raise ValueError(f"design vector has {len(x)} genes, expected {vector_length(specs)}")
    poses = [None] * len(specs)
    pos = 0
    for k in _gene_order(specs):
        s = specs[k]
        if _n_genes(s) == 3:
            poses[k] = Pose(int(x[pos]), int(x[pos + 1]), int(x[pos + 2]) * angular_increment)
            pos += 3
        else:
            poses[k] = Pose(int(x[pos]), int(x[pos + 1]))
            pos += 2
    return poses


def encode(poses, specs, angular_increment) -> tuple:
    x = []
    for k in _gene_order(specs):
        p = poses[k]
        x += [p.i, p.j]
        if _n_genes(specs[k]) == 3:
            step = round(p.theta / angular_increment)
            if step * angular_increment != p.theta:
                raise ValueError(f"theta {p.theta} is not a multiple of {angular_increment}")
            x.append(step)
    return tuple(int(v) for v in x)


# ---------------------------------------------------------------- results

@dataclass
class Arrangement:
    specs: list
    poses: list  # Pose, or None for an unplaced object
    grid: DomainGrid
    success: bool
    f_T1: int = 0
    f_A1: int = 0
    g2: int = 0
    filling_ratio: float = 0.0
    objective: float | None = None
    seed: int | None = None
    history: list = field(default_factory=list)

    @property
    def H(self):
        return self.grid.H

    @property
    def W(self):
        return self.grid.W

    @property
    def n_placed(self):
        return sum(p is not None for p in self.poses)


def arrangement_from_poses(specs, poses, H, W, **extra) -> Arrangement:
    """Rasterise placed objects and derive every reported metric."""
    placed = [(s, p) for s, p in zip(specs, poses) if p is not None]
    g = np.zeros((H, W), dtype=np.int32)
    if placed:
        kernels.paint(g, layout_params([s for s, _ in placed], [p for _, p in placed]))
    grid = DomainGrid(g)
    n1, ncov, nover = coverage_stats(grid)
    a1 = int(kernels.a1(g)) if H >= 2 and W >= 2 else 0
    ok = (len(placed) == len(specs) and nover == 0
          and all(contained(s, p, H, W) for s, p in placed))
    return Arrangement(list(specs), list(poses), grid, ok, n1, a1, nover, ncov / (H * W), **extra)


# ---------------------------------------------------------------- concurrent

def _check_objective(kind, allowed, strategy):
    kind = ObjectiveKind(kind)
    if kind not in allowed:
        raise ValueError(f"objective {kind.value} is not supported in {strategy} packing")
    return kind


def concurrent_fitness(specs, H, W, objective, mode, angular_increment, walls=False):
    """Fitness over the full design vector: metric of the accumulated grid."""
    objective = ObjectiveKind(objective)
    mode = ConstraintMode(mode)
    g = np.zeros((H, W), dtype=np.int32)
    rot = [k for k, s in enumerate(specs) if s.is_rect and s.rotatable]

    def fitness(x):
        poses = decode(x, specs, angular_increment)
        g.fill(0)
        kernels.paint(g, layout_params(specs, poses))
        n1, _, nover = kernels.stats(g)
        obj = n1 if objective is ObjectiveKind.T1 else kernels.a1(g, walls=walls)
        if mode is ConstraintMode.UNCONSTRAINED:
            return EvalResult(float(obj), FeasibilityRecord(true_g2=nover))
        g1 = []
        for k in rot:
            g1.extend(eval_g1(poses[k], specs[k], H, W))
        viol = sum(max(v, 0.0) for v in g1) + nover
        feas = nover == 0 and all(v <= 0 for v in g1)
        return EvalResult(float(obj), FeasibilityRecord(tuple(g1), nover, float(viol), feas, nover))

    return fitness


def concurrent_pack(scenario, seed=None) -> Arrangement:
    """One GA over every object's genes at once."""
    objective = _check_objective(scenario.objective, (ObjectiveKind.T1, ObjectiveKind.A1),
                                 "concurrent")
    specs, H, W, inc = scenario.objects, scenario.H, scenario.W, scenario.angular_increment
    bounds = design_bounds(specs, H, W, inc)
    fitness = concurrent_fitness(specs, H, W, objective, scenario.constraint_mode, inc,
                                 scenario.a1_walls)
    cfg = scenario.ga if seed is None else scenario.ga.with_seed(seed)
    if Solver(scenario.solver) is Solver.EXHAUSTIVE:
        best, best_eval = exhaustive_search(bounds, fitness)
        history = [best_eval.objective]
    else:
        res = run_ga(cfg, bounds, fitness)
        best, best_eval, history = res.best, res.best_eval, res.history
    poses = decode(best, specs, inc)
    arr = arrangement_from_poses(specs, poses, H, W, objective=best_eval.objective,
                                 seed=cfg.rng_seed, history=history)
    if ConstraintMode(scenario.constraint_mode) is ConstraintMode.CONSTRAINED:
        arr.success = arr.success and assess(poses, specs, arr.grid).feasible
    return arr


# ---------------------------------------------------------------- ordered

def single_fitness(grid: np.ndarray, spec: ObjectSpec, objective, angular_increment,
                   dc_sense="max", walls=False):
    """Fitness of one object's genes against a frozen occupancy grid.

    Containment and zero overlap are always enforced here.
    """
    objective = ObjectiveKind(objective)
    H, W = grid.shape
    center = DomainCenter.of(H, W)
    rotatable = spec.is_rect and spec.rotatable
    base_a1 = int(kernels.a1(grid, walls=walls)) if objective is ObjectiveKind.A1 else 0
    base_t1 = int(kernels.stats(grid)[0]) if objective is ObjectiveKind.T1 else 0

    def fitness(x):
        pose = Pose(x[0], x[1], x[2] * angular_increment if rotatable else 0.0)
        g1 = eval_g1(pose, spec, H, W) if rotatable else ()
        p = shape_params(spec, pose)
        pop, hit = kernels.overlap(grid, p)
        if objective is ObjectiveKind.DBL:
            obj = eval_DBL(pose)
        elif objective is ObjectiveKind.DC:
            obj = eval_DC(pose, spec, center, dc_sense)
        elif objective is ObjectiveKind.A1:
            obj = base_a1 + kernels.a1_gain(grid, p, walls) if hit == 0 else base_a1
        else:
            obj = base_t1 + pop
        viol = sum(max(v, 0.0) for v in g1) + hit
        feas = hit == 0 and all(v <= 0 for v in g1)
        return EvalResult(float(obj), FeasibilityRecord(tuple(g1), hit, float(viol), feas, hit))

    return fitness


def place_single(grid, spec: ObjectSpec, objective, angular_increment=45, solver="exhaustive",
                 config: GAConfig | None = None, dc_sense="max", walls=False):
    """Best feasible pose for one object on a frozen grid, or ``None``."""
    cells = grid.cells if isinstance(grid, DomainGrid) else grid
    H, W = cells.shape
    bounds = object_bounds(spec, H, W, angular_increment)
    try:
        bounds.validate()
    except ValueError:
        return None  # object larger than the domain in a fixed orientation
    fitness = single_fitness(cells, spec, objective, angular_increment, dc_sense, walls)
    if Solver(solver) is Solver.EXHAUSTIVE:
        best, ev = exhaustive_search(bounds, fitness)
    else:
        res = run_ga(config or GAConfig(), bounds, fitness)
        best, ev = res.best, res.best_eval
    if not ev.feasible:
        return None
    rot = spec.is_rect and spec.rotatable
    return Pose(best[0], best[1], best[2] * angular_increment if rot else 0.0)


def _object_seed(seed, k):
    return int(np.random.SeedSequence([int(seed), int(k)]).generate_state(1, np.uint64)[0])


def ordered_pack(scenario, seed=None, dc_sense="max") -> Arrangement:
    """Place objects one at a time in the scenario's order, freezing each placement."""
    objective = ObjectiveKind(scenario.objective)
    if objective is ObjectiveKind.T1:
        warnings.warn("T1 ranks every feasible placement alike in ordered packing",
                      stacklevel=2)
    specs, H, W, inc = scenario.objects, scenario.H, scenario.W, scenario.angular_increment
    cfg = scenario.ga if seed is None else scenario.ga.with_seed(seed)
    g = np.zeros((H, W), dtype=np.int32)
    poses = [None] * len(specs)
    for step, k in enumerate(scenario.ordering.order(specs)):
        pose = place_single(g, specs[k], objective, inc, scenario.solver,
                            cfg.with_seed(_object_seed(cfg.rng_seed, step)), dc_sense,
                            scenario.a1_walls)
        if pose is None:
            continue
        kernels.paint(g, shape_params(specs[k], pose)[None, :])
        poses[k] = pose
    return arrangement_from_poses(specs, poses, H, W, seed=cfg.rng_seed)


def pack(scenario, seed=None, dc_sense="max") -> Arrangement:
    if Strategy(scenario.strategy) is Strategy.CONCURRENT:
        return concurrent_pack(scenario, seed)
    return ordered_pack(scenario, seed, dc_sense)
