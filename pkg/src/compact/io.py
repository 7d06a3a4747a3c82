"""Scenario / arrangement JSON, trial CSV and PGM / SVG rendering."""
from __future__ import annotations

import csv
import io
import json

import numpy as np

from .ga import GAConfig
from .raster import ObjectSpec, Pose, trig
from .strategies import Arrangement, OrderingRule, arrangement_from_poses

_GA_KEYS = {
    "population": "population_size",
    "generations": "max_generations",
    "stall": "stall_generations",
    "crossover": "crossover_rate",
    "mutation": "mutation_rate_per_gene",
    "tournament": "tournament_size",
    "elites": "elite_count",
    "creep": "creep_fraction",
}


class ScenarioError(ValueError):
    """Invalid scenario document; message names the offending field."""


# field -> (allowed types, check or choices); None check means any value of the type
_INT = (int,)
_NUM = (int, float)


def _pos(v):
    return v >= 1


def _rate(v):
    return 0 <= v <= 1


_TOP = {
    "name": ((str,), None),
    "domain": ((dict,), None),
    "objects": ((list,), None),
    "strategy": ((str,), ("concurrent", "ordered")),
    "ordering": ((dict,), None),
    "objective": ((str,), ("T1", "DC", "DBL", "A1")),
    "constraint_mode": ((str,), ("constrained", "unconstrained")),
    "angular_increment_deg": (_NUM, lambda v: 0 < v <= 90),
    "solver": ((str,), ("ga", "exhaustive")),
    "a1_walls": ((bool,), None),
    "ga": ((dict,), None),
    "seed": (_INT, lambda v: 0 <= v < 2 ** 64),
}
_DOMAIN = {"H": (_INT, _pos), "W": (_INT, _pos)}
_OBJECT = {
    "id": ((str,), None),
    "kind": ((str,), ("rectangle", "circle")),
    "h": (_INT, _pos),
    "w": (_INT, _pos),
    "d": (_INT, _pos),
    "rotatable": ((bool,), None),
}
_ORDERING = {
    "key": ((str,), ("diagonal", "area")),
    "direction": ((str,), ("descending", "ascending")),
}
_GA = {
    "population": (_INT, lambda v: v >= 2),
    "generations": (_INT, _pos),
    "stall": (_INT, _pos),
    "crossover": (_NUM, _rate),
    "mutation": (_NUM + (type(None),), lambda v: v is None or _rate(v)),
    "tournament": (_INT, _pos),
    "elites": (_INT, lambda v: v >= 0),
    "creep": (_NUM, _rate),
}


def _check(obj, fields, required, path, errors):
    if not isinstance(obj, dict):
        errors.append(f"{path}: expected an object")
        return
    for key in required:
        if key not in obj:
            errors.append(f"{path}: missing required field {key!r}")
    for key, value in obj.items():
        where = f"{path}.{key}"
        if key not in fields:
            errors.append(f"{where}: unknown field")
            continue
        types, rule = fields[key]
        # bool is an int subclass; only accept it where bool is named
        if not isinstance(value, types) or (isinstance(value, bool) and bool not in types):
            errors.append(f"{where}: wrong type {type(value).__name__}")
        elif isinstance(rule, tuple) and value not in rule:
            errors.append(f"{where}: {value!r} is not one of {list(rule)}")
        elif callable(rule) and not rule(value):
            errors.append(f"{where}: {value!r} is out of range")


def validate_scenario_doc(doc) -> list[str]:
    """All problems with a scenario document, each prefixed by a JSON path."""
    errors: list[str] = []
    _check(doc, _TOP, ("domain", "objects"), "$", errors)
    if not isinstance(doc, dict):
        return errors
    if isinstance(doc.get("domain"), dict):
        _check(doc["domain"], _DOMAIN, ("H", "W"), "$.domain", errors)
    if isinstance(doc.get("objects"), list):
        if not doc["objects"]:
            errors.append("$.objects: needs at least one object")
        for k, o in enumerate(doc["objects"]):
            need = ("id", "kind")
            if isinstance(o, dict):
                need += {"rectangle": ("h", "w"), "circle": ("d",)}.get(o.get("kind"), ())
            _check(o, _OBJECT, need, f"$.objects[{k}]", errors)
    if isinstance(doc.get("ordering"), dict):
        _check(doc["ordering"], _ORDERING, (), "$.ordering", errors)
    if isinstance(doc.get("ga"), dict):
        _check(doc["ga"], _GA, (), "$.ga", errors)
    return errors


def scenario_from_dict(doc: dict):
    """Validate a scenario document and build a ``Scenario``; returns ``(scenario, seed)``."""
    from .scenarios import Scenario

    errors = validate_scenario_doc(doc)
    if errors:
        raise ScenarioError("; ".join(errors))
    objs = []
    for o in doc["objects"]:
        if o["kind"] == "rectangle":
            objs.append(ObjectSpec.rect(o["id"], o["h"], o["w"], o.get("rotatable", False)))
        else:
            objs.append(ObjectSpec.circle(o["id"], o["d"]))
    ga = GAConfig(**{_GA_KEYS[k]: v for k, v in doc.get("ga", {}).items()})
    seed = doc.get("seed", 0)
    kw = dict(
        H=doc["domain"]["H"], W=doc["domain"]["W"], objects=objs,
        ordering=OrderingRule(**doc.get("ordering", {})),
        ga=ga.with_seed(seed), name=doc.get("name", ""),
    )
    for key, attr in (("strategy", "strategy"), ("objective", "objective"),
                      ("constraint_mode", "constraint_mode"), ("solver", "solver"),
                      ("angular_increment_deg", "angular_increment"), ("a1_walls", "a1_walls")):
        if key in doc:
            kw[attr] = doc[key]
    try:
        return Scenario(**kw), seed
    except ValueError as e:
        raise ScenarioError(f"$: {e}") from None


def scenario_to_dict(scenario, seed=None) -> dict:
    objs = []
    for o in scenario.objects:
        if o.is_rect:
            objs.append({"id": o.id, "kind": "rectangle", "h": o.h, "w": o.w,
                         "rotatable": o.rotatable})
        else:
            objs.append({"id": o.id, "kind": "circle", "d": o.d})
    ga = {k: getattr(scenario.ga, attr) for k, attr in _GA_KEYS.items()}
    doc = {
        "name": scenario.name,
        "domain": {"H": scenario.H, "W": scenario.W},
        "objects": objs,
        "strategy": scenario.strategy.value,
        "ordering": {"key": scenario.ordering.key, "direction": scenario.ordering.direction},
        "objective": scenario.objective.value,
        "constraint_mode": scenario.constraint_mode.value,
        "angular_increment_deg": scenario.angular_increment,
        "solver": scenario.solver.value,
        "a1_walls": scenario.a1_walls,
        "ga": ga,
        "seed": scenario.ga.rng_seed if seed is None else int(seed),
    }
    return doc


def load_scenario(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise ScenarioError(f"$: not valid JSON ({e})") from None
    return scenario_from_dict(doc)


# ---------------------------------------------------------------- arrangements

def arrangement_to_dict(arr: Arrangement, scenario) -> dict:
    objects = []
    for s, p in zip(arr.specs, arr.poses):
        if p is None:
            objects.append({"id": s.id, "placed": False, "i": None, "j": None, "theta_deg": None})
        else:
            objects.append({"id": s.id, "placed": True, "i": p.i, "j": p.j,
                            "theta_deg": float(p.theta)})
    return {
        "scenario": scenario_to_dict(scenario, arr.seed),
        "objects": objects,
        "metrics": {"f_T1": arr.f_T1, "f_A1": arr.f_A1, "g2": arr.g2,
                    "filling_ratio": arr.filling_ratio},
        "success": bool(arr.success),
        "seed": arr.seed,
    }


def arrangement_from_dict(doc: dict):
    """Re-rasterise an arrangement document; returns ``(scenario, arrangement)``."""
    scenario, seed = scenario_from_dict(doc["scenario"])
    by_id = {o["id"]: o for o in doc["objects"]}
    poses = []
    for s in scenario.objects:
        o = by_id.get(s.id)
        if o is None or not o["placed"]:
            poses.append(None)
        else:
            poses.append(Pose(int(o["i"]), int(o["j"]), float(o["theta_deg"])))
    arr = arrangement_from_poses(scenario.objects, poses, scenario.H, scenario.W,
                                 seed=doc.get("seed", seed))
    return scenario, arr


def save_json(doc, path):
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_arrangement(path):
    with open(path) as fh:
        return arrangement_from_dict(json.load(fh))


# ---------------------------------------------------------------- trial CSV

CSV_HEADER = ["trial", "seed", "success", "filling_ratio", "f_T1", "f_A1", "g2"]


def trials_csv(report) -> str:
    """Per-trial rows plus a summary row.

    In the summary row ``success`` holds the success rate and the numeric
    columns hold means over trials.
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for k, (seed, a) in enumerate(zip(report.seeds, report.arrangements)):
        w.writerow([k, seed, int(a.success), f"{a.filling_ratio:.6f}", a.f_T1, a.f_A1, a.g2])
    arrs = report.arrangements
    n = len(arrs)
    w.writerow(["summary", report.seeds[0] if report.seeds else "",
                f"{report.n_success / report.n_trials:.6f}", f"{report.fill_mean:.6f}",
                f"{sum(a.f_T1 for a in arrs) / n:.6f}", f"{sum(a.f_A1 for a in arrs) / n:.6f}",
                f"{sum(a.g2 for a in arrs) / n:.6f}"])
    return buf.getvalue()


# ---------------------------------------------------------------- images

def to_pgm(cells: np.ndarray) -> str:
    """Plain (P2) PGM of the occupancy counts; one pixel per cell."""
    H, W = cells.shape
    maxval = max(int(cells.max()) if cells.size else 0, 1)  # PGM needs maxval >= 1
    lines = ["P2", f"{W} {H}", str(maxval)]
    lines += [" ".join(str(int(v)) for v in row) for row in cells]
    return "\n".join(lines) + "\n"


def read_pgm(text: str) -> np.ndarray:
    tokens = [t for line in text.splitlines() if not line.startswith("#") for t in line.split()]
    if tokens[0] != "P2":
        raise ValueError("not a plain PGM")
    W, H = int(tokens[1]), int(tokens[2])
    return np.array([int(t) for t in tokens[4:4 + H * W]], dtype=np.int32).reshape(H, W)


def _rect_corners(spec, pose):
    """Corner points in (x=column, y=row) cell-boundary coordinates."""
    if pose.theta == 90:
        c, s = 0.0, 1.0
    elif pose.theta == -90:
        c, s = 0.0, -1.0
    else:
        _, c, s = trig(pose.theta)
    i, j, h, w = pose.i, pose.j, spec.h, spec.w
    pts = [(i, j), (i - w * s, j + w * c), (i + h * c - w * s, j + h * s + w * c),
           (i + h * c, j + h * s)]
    return [(q - 1, r - 1) for r, q in pts]


def to_svg(arr: Arrangement, scale: int = 4) -> str:
    H, W = arr.H, arr.W
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W * scale}" height="{H * scale}" '
           f'viewBox="0 0 {W} {H}">',
           f'<rect x="0" y="0" width="{W}" height="{H}" fill="white" stroke="black" '
           f'stroke-width="0.3"/>']
    palette = ["#4e79a7", "#f28e2b", "#59a14f", "#b07aa1", "#edc948", "#76b7b2", "#ff9da7",
               "#9c755f", "#bab0ac"]
    for k, (s, p) in enumerate(zip(arr.specs, arr.poses)):
        if p is None:
            continue
        col = palette[k % len(palette)]
        if s.is_rect:
            pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in _rect_corners(s, p))
            out.append(f'<polygon points="{pts}" fill="{col}" fill-opacity="0.8" '
                       f'stroke="black" stroke-width="0.2"><title>{s.id}</title></polygon>')
        else:
            out.append(f'<circle cx="{p.j - 0.5}" cy="{p.i - 0.5}" r="{s.d / 2}" fill="{col}" '
                       f'fill-opacity="0.8" stroke="black" stroke-width="0.2">'
                       f'<title>{s.id}</title></circle>')
    rows, cols = np.nonzero(arr.grid.cells > 1)
    for r, q in zip(rows.tolist(), cols.tolist()):
        out.append(f'<rect class="overlap" x="{q}" y="{r}" width="1" height="1" fill="red"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(arr: Arrangement, path, fmt="pgm"):
    if fmt == "pgm":
        text = to_pgm(arr.grid.cells)
    elif fmt == "svg":
        text = to_svg(arr)
    else:
        raise ValueError(f"unknown image format {fmt!r}")
    with open(path, "w") as fh:
        fh.write(text)

