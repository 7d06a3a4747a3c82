"""Raster packing of rotatable rectangles and circles in a rectangular domain."""
from . import kernels
from .constraints import BoundsSet, ConstraintMode, FeasibilityRecord, assess, eval_g1, eval_g2
from .ga import EvalResult, GAConfig, GAResult, compare, exhaustive_search, run_ga
from .objectives import (DomainCenter, ObjectiveKind, eval_A1, eval_DBL, eval_DC, eval_T1)
from .raster import (DomainGrid, ObjectSpec, Pose, accumulate, filling_ratio, rasterize,
                     rasterize_circle, rasterize_rect)
from .scenarios import (Scenario, TrialReport, catalog, get_scenario, reference_arrangement,
                        run_trials, verify_reference_arrangement)
from .strategies import (Arrangement, OrderingRule, Solver, Strategy, decode, encode, pack,
                         place_single)

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "BoundsSet", "ConstraintMode", "DomainCenter", "DomainGrid", "EvalResult",
    "FeasibilityRecord", "GAConfig", "GAResult", "ObjectSpec", "ObjectiveKind", "OrderingRule",
    "Pose", "Scenario", "Solver", "Strategy", "TrialReport", "accumulate", "assess", "catalog",
    "compare", "decode", "encode", "eval_A1", "eval_DBL", "eval_DC", "eval_T1", "eval_g1",
    "eval_g2", "exhaustive_search", "filling_ratio", "get_scenario", "kernels", "pack",
    "place_single", "rasterize", "rasterize_circle", "rasterize_rect", "reference_arrangement",
    "run_ga", "run_trials", "verify_reference_arrangement",
]
