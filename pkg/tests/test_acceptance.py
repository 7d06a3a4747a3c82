"""One check per acceptance criterion, each reported as a PASS/FAIL line.

Checks that cannot be met with this rasterization are strict xfails: the
comparison is still made and reported, and an unexpected pass is an error.
"""
import itertools
import time

import numpy as np
import pytest

from compact import io as cio
from compact.constraints import eval_g1, eval_g2, object_bounds
from compact.ga import GAConfig, compare, exhaustive_search, run_ga
from compact.objectives import eval_A1
from compact.raster import ObjectSpec, Pose, build_grid, rasterize, unclipped_popcount
from compact.scenarios import get_scenario, reference_arrangement, run_trials
from compact.strategies import (concurrent_fitness, decode, design_bounds, encode,
                                single_fitness)

from .conftest import record


def pp(x):
    """Percentage points, rounded to absorb binary float noise in cell ratios."""
    return round(100 * x, 6)


# 1 -------------------------------------------------------------------------

def test_c1_rasterization_convergence():
    t0 = time.perf_counter()
    got = {}
    for H in (20, 50, 100):
        h = round(0.4 * H)
        spec = ObjectSpec.rect("r", h, round(1.5 * h), rotatable=True)
        pose = Pose(spec.w // 2 + 2, 2, 30)  # the top edge rises w*sin(30) rows
        assert all(v <= 0 for v in eval_g1(pose, spec, H, H))
        m = rasterize(spec, pose, H, H)
        got[H] = (int(m.sum()), round(float(m.sum()) / H ** 2, 4))
    ok = got == {20: (92, 0.23), 50: (595, 0.238), 100: (2414, 0.2414)}
    dt = time.perf_counter() - t0
    record(1, ok and dt < 1, f"counts/ratios {got}, {dt:.3f}s")
    assert ok and dt < 1


# 2 -------------------------------------------------------------------------

def _oracle_cases():
    a = ObjectSpec.rect("a", 8, 12)
    b = ObjectSpec.rect("b", 6, 10, rotatable=True)
    yield "T1 concurrent 20x20", design_bounds([a, b], 20, 20, 45), \
        concurrent_fitness([a, b], 20, 20, "T1", "constrained", 45)
    frozen, _ = build_grid(30, 30, [a], [Pose(20, 5)])
    c = ObjectSpec.rect("c", 7, 11, rotatable=True)
    for obj in ("DBL", "T1"):
        yield f"{obj} second object 30x30", object_bounds(c, 30, 30, 45), \
            single_fitness(frozen.cells, c, obj, 45)


def test_c2_ga_matches_exhaustive_oracle():
    t0 = time.perf_counter()
    lines, ok = [], True
    for name, bounds, fit in _oracle_cases():
        _, best = exhaustive_search(bounds, fit)
        hits = sum(compare(run_ga(GAConfig(rng_seed=s), bounds, fit).best_eval, best) >= 0
                   for s in range(10))
        lines.append(f"{name}: {hits}/10")
        ok &= hits >= 9
    dt = time.perf_counter() - t0
    record(2, ok and dt < 120, "; ".join(lines) + f"; {dt:.0f}s")
    assert ok


# 3 -------------------------------------------------------------------------

def test_c3_fig5a_perfect_fill():
    _, arr, _ = reference_arrangement("fig5a")
    ok = arr.f_T1 == 10000 and arr.g2 == 0 and arr.filling_ratio == 1.0
    record("3 (Fig. 5a)", ok, f"f_T1={arr.f_T1} g2={arr.g2} fill={arr.filling_ratio}")
    assert ok


@pytest.mark.xfail(strict=True, reason="raster area of all Table 4 / Table 5 objects rules "
                   "out the printed ratios; see README")
@pytest.mark.parametrize("name", ["fig8", "fig9"])
def test_c3_rotated_references(name):
    _, arr, target = reference_arrangement(name)
    ok = arr.g2 == 0 and abs(arr.filling_ratio - target) <= 0.01
    record(f"3 ({name})", ok, f"fill {arr.filling_ratio:.4f} vs {target} +/- 0.01, "
           f"feasible={arr.success}, placed {arr.n_placed}/{len(arr.specs)}")
    assert ok


# 4 -------------------------------------------------------------------------

@pytest.mark.slow
def test_c4_table2_trends():
    t0 = time.perf_counter()
    ordered = {}
    for n in (4, 5, 9):
        s = get_scenario(f"table1-{n}").with_(solver="ga")
        ordered[n] = run_trials(s, 20).success_rate
    concurrent = {}
    for n in range(4, 10):
        s = get_scenario(f"table1-{n}").with_(strategy="concurrent", objective="T1",
                                               constraint_mode="unconstrained", solver="ga")
        concurrent[n] = run_trials(s, 20).success_rate
    rates = [concurrent[n] for n in range(4, 10)]
    inversions = sum(a < b for a, b in itertools.combinations(rates, 2))
    a = ordered[4] == 1 and ordered[5] == 1 and ordered[9] >= 0.75
    b = concurrent[4] >= 0.8
    c = inversions <= 1
    dt = time.perf_counter() - t0
    record("4a", a, f"ordered DBL success n=4,5,9: {ordered}")
    record("4b", b, f"concurrent T1 n=4: {concurrent[4]}")
    record("4c", c, f"concurrent T1 n=4..9: {rates}, inversions {inversions}; {dt:.0f}s")
    assert a and b and c and dt < 1800


# 5 -------------------------------------------------------------------------

@pytest.mark.slow
def test_c5a_table3_pattern():
    s = get_scenario("table3").with_(solver="ga")
    rate = {o: run_trials(s.with_(objective=o), 50).success_rate for o in ("A1", "DC", "DBL")}
    ok = rate["A1"] > rate["DC"] and rate["DBL"] == 0
    record("5a", ok, f"Table 3 success over 50 trials {rate}")
    assert ok


@pytest.fixture(scope="module")
def table4_means():
    s = get_scenario("table4").with_(solver="ga")
    return {o: run_trials(s.with_(objective=o), 20).fill_mean for o in ("A1", "DBL", "DC")}


@pytest.mark.slow
def test_c5b_table4_ordering(table4_means):
    m = table4_means
    ok = m["A1"] > m["DBL"] > m["DC"]
    record("5b (order)", ok, "Table 4 mean fill " +
           ", ".join(f"{k} {pp(v):.2f}%" for k, v in m.items()))
    assert ok


@pytest.mark.slow
@pytest.mark.parametrize("objective,target", [
    ("A1", 70.8), ("DBL", 67.7), ("DC", 56.7),
])
def test_c5b_table4_bands(table4_means, objective, target):
    got = pp(table4_means[objective])
    ok = abs(got - target) <= 8
    record(f"5b ({objective} band)", ok, f"{got:.2f}% vs {target}% +/- 8pp")
    assert ok


# 6 -------------------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("objective", ["T1", "A1"])
def test_c6_unconstrained_feasible_success(objective):
    t0 = time.perf_counter()
    s = get_scenario("square-circles").with_(objective=objective,
                                              constraint_mode="unconstrained")
    rep = run_trials(s, 100)
    dt = time.perf_counter() - t0
    ok = rep.n_success >= 1
    record(f"6 ({objective})", ok, f"{rep.n_success}/100 fully feasible; {dt:.0f}s")
    assert ok


# 7 -------------------------------------------------------------------------

def test_c7_invariants(tmp_path):
    t0 = time.perf_counter()
    checks = {}
    rng = np.random.default_rng(0)

    ok = True
    for _ in range(100):
        spec = ObjectSpec.rect("r", *rng.integers(1, 12, 2).tolist(), rotatable=True)
        th = float(rng.integers(-6, 7) * 15)
        di, dj = rng.integers(0, 8, 2).tolist()
        a = rasterize(spec, Pose(20, 20, th), 60, 60)
        b = rasterize(spec, Pose(20 + di, 20 + dj, th), 60, 60)
        ok &= np.array_equal(np.roll(np.roll(a, di, 0), dj, 1), b)
    checks["translation"] = ok

    ok = True
    for h1, w1, h2, w2 in rng.integers(2, 7, (60, 4)).tolist():
        a, b = ObjectSpec.rect("a", h1, w1), ObjectSpec.rect("b", h2, w2)
        L = min(w1, w2)
        both = eval_A1(build_grid(20, 20, [a, b], [Pose(2, 2), Pose(2 + h1, 2)])[0])
        sep = (eval_A1(build_grid(20, 20, [a], [Pose(2, 2)])[0])
               + eval_A1(build_grid(20, 20, [b], [Pose(2 + h1, 2)])[0]))
        ok &= both == sep + L - 1
    checks["A1 +L-1"] = ok

    ok = True
    for _ in range(200):
        specs = [ObjectSpec.rect(k, *rng.integers(1, 8, 2).tolist()) for k in range(3)]
        poses = [Pose(*rng.integers(1, 15, 2).tolist()) for _ in specs]
        g, counts = build_grid(20, 20, specs, poses)
        ok &= (eval_g2(g) == 0) == (int(counts.sum()) == int((g.cells > 0).sum()))
    checks["g2 popcount"] = ok

    ok = True
    for H in (10, 20, 30):
        for (h, w), step in itertools.product([(8, 12), (3, 5)], range(-2, 3)):
            spec = ObjectSpec.rect("r", h, w, True)
            for i, j in itertools.product(range(-2, H + 3), repeat=2):
                p = Pose(i, j, step * 45.0)
                g1 = eval_g1(p, spec, H, H)
                inside = rasterize(spec, p, H, H).sum() == unclipped_popcount(spec, p)
                ok &= (not inside and max(g1) > 0) or (inside and max(g1) < 2)
    checks["g1 vs clipping"] = ok

    s = get_scenario("table1-6").with_(solver="ga")
    csv1 = cio.trials_csv(run_trials(s, 2, 42, workers=1))
    csv2 = cio.trials_csv(run_trials(s, 2, 42, workers=1))
    checks["CSV determinism"] = csv1.encode() == csv2.encode()

    specs = get_scenario("table4").objects
    b = design_bounds(specs, 100, 100, 45)
    ok = True
    for _ in range(1000):
        x = tuple(int(rng.integers(lo, hi + 1)) for lo, hi in zip(b.lower, b.upper))
        ok &= encode(decode(x, specs, 45), specs, 45) == x
    checks["encode/decode"] = ok

    dt = time.perf_counter() - t0
    good = all(checks.values()) and dt < 120
    record(7, good, ", ".join(f"{k} {'ok' if v else 'BROKEN'}" for k, v in checks.items())
           + f"; {dt:.1f}s")
    assert good
