"""Case-study catalogue, reference arrangements and the trial harness."""
from __future__ import annotations

import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from .constraints import ConstraintMode
from .ga import GAConfig
from .objectives import ObjectiveKind
from .raster import ObjectSpec, Pose
from .strategies import Arrangement, OrderingRule, Solver, Strategy, arrangement_from_poses, pack


@dataclass(frozen=True)
class Scenario:
    H: int
    W: int
    objects: tuple
    strategy: Strategy = Strategy.ORDERED
    ordering: OrderingRule = OrderingRule()
    objective: ObjectiveKind = ObjectiveKind.DBL
    constraint_mode: ConstraintMode = ConstraintMode.CONSTRAINED
    angular_increment: float = 45.0
    ga: GAConfig = GAConfig()
    solver: Solver = Solver.EXHAUSTIVE
    # A1 also rewards contact with the domain border
    a1_walls: bool = True
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        object.__setattr__(self, "objective", ObjectiveKind(self.objective))
        object.__setattr__(self, "constraint_mode", ConstraintMode(self.constraint_mode))
        object.__setattr__(self, "solver", Solver(self.solver))
        self.validate()

    def validate(self):
        if self.H < 2 or self.W < 2:
            raise ValueError("domain must be at least 2 x 2")
        if not self.objects:
            raise ValueError("scenario has no objects")
        ids = [o.id for o in self.objects]
        if len(set(ids)) != len(ids):
            raise ValueError("object ids must be unique")
        inc = self.angular_increment
        if inc <= 0 or 90 % inc:
            raise ValueError(f"angular increment {inc} must divide 90")
        if self.strategy is Strategy.CONCURRENT and self.objective not in (
                ObjectiveKind.T1, ObjectiveKind.A1):
            raise ValueError(f"{self.objective.value} cannot drive concurrent packing")

    def with_(self, **kw) -> "Scenario":
        return replace(self, **kw)


def fits_somewhere(spec: ObjectSpec, H, W, increment=45.0) -> bool:
    """True when some orientation of the object passes containment."""
    if not spec.is_rect:
        return spec.d // 2 * 2 + 1 <= min(H, W)
    if not spec.rotatable:
        return spec.h <= H and spec.w <= W
    from .constraints import angle_steps, eval_g1
    lo, hi = angle_steps(increment)
    for step in range(lo, hi + 1):
        g = eval_g1(Pose(1, 1, step * increment), spec, H, W)
        # translation only moves top/left slack into bottom/right slack
        if g[0] + g[1] <= 0 and g[2] + g[3] <= 0:
            return True
    return False


# ---------------------------------------------------------------- catalogue

TABLE1 = {
    4: [(50, 60), (50, 40), (30, 100), (20, 100)],
    5: [(50, 60), (50, 40), (30, 70), (30, 30), (20, 100)],
    6: [(50, 60), (50, 40), (20, 70), (10, 70), (30, 30), (20, 100)],
    7: [(50, 60), (50, 40), (20, 70), (10, 70), (30, 20), (30, 10), (20, 100)],
    8: [(50, 60), (50, 40), (20, 70), (10, 70), (30, 20), (30, 10), (15, 100), (5, 100)],
    9: [(50, 60), (50, 40), (15, 70), (5, 70), (10, 70), (30, 20), (30, 10), (15, 100),
        (5, 100)],
}

TABLE3 = [(2, 80, 20), (2, 20, 80), (2, 40, 20), (2, 20, 40), (1, 20, 20)]
TABLE4 = ([(1, 10, 120), (2, 10, 90)], [(2, 39), (4, 19)])
TABLE5 = ([(4, 40, 40), (1, 28, 28), (4, 20, 15)], [(2, 19), (4, 11)])


def _rects(dims, rotatable=False):
    return [ObjectSpec.rect(f"r{k + 1}", h, w, rotatable) for k, (h, w) in enumerate(dims)]


def _mixed(rects, circles):
    out, n = [], 0
    for q, h, w in rects:
        for _ in range(q):
            n += 1
            out.append(ObjectSpec.rect(f"r{n}", h, w, rotatable=True))
    n = 0
    for q, d in circles:
        for _ in range(q):
            n += 1
            out.append(ObjectSpec.circle(f"c{n}", d))
    return out


def _build_catalog():
    cat = {}
    for n, dims in TABLE1.items():
        cat[f"table1-{n}"] = Scenario(100, 100, _rects(dims), name=f"table1-{n}")
    t3 = [(h, w) for q, h, w in TABLE3 for _ in range(q)]
    cat["table3"] = Scenario(100, 100, _rects(t3), objective=ObjectiveKind.A1, name="table3")
    cat["square-circles"] = Scenario(
        100, 100, [ObjectSpec.rect("sq", 45, 45, True)] + [ObjectSpec.circle(f"c{k}", 39)
                                                          for k in range(1, 5)],
        strategy=Strategy.CONCURRENT, objective=ObjectiveKind.T1, solver=Solver.GA,
        name="square-circles")
    cat["table4"] = Scenario(100, 100, _mixed(*TABLE4), objective=ObjectiveKind.A1,
                             name="table4")
    cat["table5"] = Scenario(100, 100, _mixed(*TABLE5), objective=ObjectiveKind.DC,
                             name="table5")
    return cat


_CATALOG = _build_catalog()


def catalog() -> dict[str, Scenario]:
    return dict(_CATALOG)


def get_scenario(name) -> Scenario:
    try:
        return _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalogue scenario {name!r}; known: {sorted(_CATALOG)}") from None


# ---------------------------------------------------------------- reference arrangements

def _p(i, j, th=0.0):
    return Pose(i, j, th)


# poses listed in catalogue object order
REFERENCES = {
    "fig5a": ("table1-4", [_p(1, 1), _p(1, 61), _p(51, 1), _p(81, 1)], 1.0),
    "fig5b": ("table1-5", [_p(1, 1), _p(1, 61), _p(51, 1), _p(51, 71), _p(81, 1)], 1.0),
    "fig5c": ("table1-6", [_p(1, 1), _p(1, 61), _p(51, 1), _p(71, 1), _p(51, 71),
                           _p(81, 1)], 1.0),
    "fig5d": ("table1-7", [_p(1, 1), _p(1, 61), _p(51, 1), _p(71, 1), _p(51, 71),
                           _p(51, 91), _p(81, 1)], 1.0),
    "fig5e": ("table1-8", [_p(1, 1), _p(1, 61), _p(51, 1), _p(71, 1), _p(51, 71),
                           _p(51, 91), _p(81, 1), _p(96, 1)], 1.0),
    "fig5f": ("table1-9", [_p(1, 1), _p(1, 61), _p(51, 1), _p(66, 1), _p(71, 1),
                           _p(51, 71), _p(51, 91), _p(81, 1), _p(96, 1)], 1.0),
    # pinwheel of pinwheels
    "fig6a": ("table3", [_p(1, 1), _p(21, 81), _p(1, 21), _p(81, 1), _p(21, 21),
                         _p(41, 61), _p(61, 21), _p(21, 41), _p(41, 41)], 1.0),
    "fig7": ("square-circles", [_p(50, 19, 45), _p(20, 20), _p(20, 81), _p(81, 20),
                                _p(81, 81)], None),
    # all nine Table 4 objects placed; found by the ordered GA with A1 (seed 0)
    "fig8": ("table4", [_p(90, 5, 45), _p(68, 13, 45), _p(84, 25, 45), _p(23, 30), _p(76, 74),
                        _p(56, 11), _p(47, 89), _p(89, 47), _p(10, 57)], 0.744),
    # best feasible Table 5 layout found; the 28 x 28 square (r5) stays unplaced
    "fig9": ("table5", [_p(1, 56), _p(41, 1), _p(1, 1), _p(41, 41), None, _p(1, 41),
                        _p(81, 79, -90), _p(64, 81), _p(81, 21, -90), _p(90, 30), _p(90, 49),
                        _p(58, 86), _p(52, 95), _p(46, 86), _p(26, 46)], 0.923),
}


def reference_arrangement(name) -> tuple[Scenario, Arrangement, float | None]:
    if name not in REFERENCES:
        raise KeyError(f"no reference arrangement {name!r}; known: {sorted(REFERENCES)}")
    scen_name, poses, target_ratio = REFERENCES[name]
    scen = get_scenario(scen_name)
    arr = arrangement_from_poses(scen.objects, poses, scen.H, scen.W)
    return scen, arr, target_ratio


def verify_reference_arrangement(name, tol=0.01) -> bool:
    """Feasible, fully placed, and (when the figure states one) the printed filling ratio."""
    _, arr, ratio = reference_arrangement(name)
    if not arr.success:
        return False
    return ratio is None or abs(arr.filling_ratio - ratio) <= tol


# ---------------------------------------------------------------- trials

@dataclass
class TrialReport:
    n_trials: int
    n_success: int
    success_rate: float
    fill_mean: float
    fill_max: float
    fill_min: float
    fill_std: float
    seeds: list = field(default_factory=list)
    arrangements: list = field(default_factory=list)


def _one_trial(args):
    scenario, seed, dc_sense = args
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return pack(scenario, seed, dc_sense)


def _workers(n_trials):
    env = os.environ.get("COMPACT_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(cap, n_trials))


def run_trials(scenario: Scenario, n_trials: int, base_seed: int = 0, dc_sense="max",
               workers=None) -> TrialReport:
    """Run ``n_trials`` packings; trial k uses seed ``base_seed + k``."""
    if n_trials < 1:
        raise ValueError("n_trials must be >= 1")
    seeds = [base_seed + k for k in range(n_trials)]
    jobs = [(scenario, s, dc_sense) for s in seeds]
    workers = _workers(n_trials) if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            arrs = list(ex.map(_one_trial, jobs))
    else:
        arrs = [_one_trial(j) for j in jobs]
    fills = [a.filling_ratio for a in arrs]
    n_ok = sum(a.success for a in arrs)
    return TrialReport(
        n_trials, n_ok, n_ok / n_trials, statistics.fmean(fills), max(fills), min(fills),
        statistics.pstdev(fills) if n_trials > 1 else 0.0, seeds, arrs)
