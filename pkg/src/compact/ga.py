"""Integer-coded genetic algorithm with feasibility-rule selection.

Random numbers come from numpy's PCG64 generator seeded with
``GAConfig.rng_seed``. Within a generation all draws happen in one fixed
order (tournaments, crossover coin flips, crossover masks, mutation flags,
mutation values), so a run is a pure function of the config, bounds and
fitness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .constraints import BoundsSet, FeasibilityRecord

FEASIBLE = FeasibilityRecord()


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 150
    max_generations: int = 500
    stall_generations: int = 50
    crossover_rate: float = 0.8
    mutation_rate_per_gene: float | None = None  # None -> 1 / number of genes
    tournament_size: int = 3
    elite_count: int = 2
    rng_seed: int = 0
    # share of mutations that take a small step instead of resampling
    creep_fraction: float = 0.0
    # stop as soon as a feasible individual reaches this objective
    target: float | None = None

    def validate(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if not 0 <= self.elite_count < self.population_size:
            raise ValueError("elite_count must be in [0, population_size)")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if self.max_generations < 1 or self.stall_generations < 1:
            raise ValueError("generation limits must be >= 1")
        for name in ("crossover_rate", "mutation_rate_per_gene", "creep_fraction"):
            v = getattr(self, name)
            if v is not None and not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")

    def with_seed(self, seed):
        return replace(self, rng_seed=int(seed))


@dataclass(frozen=True)
class EvalResult:
    objective: float
    feasibility: FeasibilityRecord = FEASIBLE

    def __post_init__(self):
        if not np.isfinite(self.objective):
            raise ValueError("objective must be finite")

    @property
    def feasible(self):
        return self.feasibility.feasible

    def key(self):
        """Sort key, larger is better: feasible first, then objective or -violation."""
        if self.feasibility.feasible:
            return (1, self.objective)
        return (0, -self.feasibility.total_violation)


def compare(a: EvalResult, b: EvalResult) -> int:
    """1 if ``a`` wins, -1 if ``b`` wins, 0 on a tie."""
    ka, kb = a.key(), b.key()
    return (ka > kb) - (ka < kb)


@dataclass
class GAResult:
    best: tuple
    best_eval: EvalResult
    history: list = field(default_factory=list)
    generations: int = 0
    evaluations: int = 0


Fitness = Callable[[tuple], EvalResult]


def _bounds_arrays(bounds: BoundsSet):
    bounds.validate()
    lo = np.asarray(bounds.lower, dtype=np.int64)
    hi = np.asarray(bounds.upper, dtype=np.int64)
    return lo, hi


def run_ga(config: GAConfig, bounds: BoundsSet, fitness: Fitness) -> GAResult:
    """Maximise ``fitness`` over integer genotypes within ``bounds``."""
    config.validate()
    lo, hi = _bounds_arrays(bounds)
    n = len(lo)
    if n == 0:
        raise ValueError("no design variables")
    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    P = config.population_size
    pm = config.mutation_rate_per_gene if config.mutation_rate_per_gene is not None else 1.0 / n
    span = hi - lo
    creep_step = np.maximum(1, span // 20)

    cache: dict[tuple, EvalResult] = {}

    def evaluate(pop):
        out = []
        for row in pop:
            g = tuple(int(x) for x in row)
            r = cache.get(g)
            if r is None:
                r = fitness(g)
                cache[g] = r
            out.append(r)
        return out

    pop = rng.integers(lo, hi + 1, size=(P, n))
    best, best_eval = None, None
    history = []
    stall = 0
    gen = 0
    while True:
        evals = evaluate(pop)
        keys = [e.key() for e in evals]
        # stable ranking: ties go to the lower index
        order = sorted(range(P), key=lambda k: keys[k], reverse=True)
        top = order[0]
        if best_eval is None or evals[top].key() > best_eval.key():
            best, best_eval = tuple(int(x) for x in pop[top]), evals[top]
            stall = 0
        else:
            stall += 1
        history.append(best_eval.objective)
        gen += 1
        if config.target is not None and best_eval.feasible and best_eval.objective >= config.target:
            break
        if gen >= config.max_generations or stall >= config.stall_generations:
            break

        rank = np.empty(P, dtype=np.int64)
        rank[order] = np.arange(P)
        m = P - config.elite_count
        contestants = rng.integers(0, P, size=(m, 2, config.tournament_size))
        winners = np.take_along_axis(
            contestants, rank[contestants].argmin(axis=2)[..., None], axis=2)[..., 0]
        p1, p2 = pop[winners[:, 0]], pop[winners[:, 1]]
        do_x = rng.random(m) < config.crossover_rate
        xmask = rng.random((m, n)) < 0.5
        children = np.where(do_x[:, None] & xmask, p2, p1)
        mut = rng.random((m, n)) < pm
        fresh = rng.integers(lo, hi + 1, size=(m, n))
        if config.creep_fraction > 0:
            creep = rng.random((m, n)) < config.creep_fraction
            step = rng.integers(-creep_step, creep_step + 1, size=(m, n))
            fresh = np.where(creep, np.clip(children + step, lo, hi), fresh)
        children = np.where(mut, fresh, children)
        elites = pop[order[:config.elite_count]]
        pop = np.vstack([elites, children])

    return GAResult(best, best_eval, history, gen, len(cache))


def exhaustive_search(bounds: BoundsSet, fitness: Fitness, budget: int = 10 ** 7):
    """Global optimum by enumeration; ties go to the lexicographically smallest genotype."""
    lo, hi = _bounds_arrays(bounds)
    size = bounds.size()
    if size > budget:
        raise ValueError(f"search space of {size} points exceeds the budget of {budget}")
    best, best_eval = None, None
    for g in itertools.product(*(range(a, b + 1) for a, b in zip(lo.tolist(), hi.tolist()))):
        r = fitness(g)
        if best_eval is None or r.key() > best_eval.key():
            best, best_eval = g, r
    return best, best_eval
