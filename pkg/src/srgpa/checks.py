"""Randomized oracle trials and the probe-count benchmark."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, Neighborhood
from .oracles import naive_recompute_all
from .population import Population
from .queues import OUT, SystemOfQueues
from .zone import RestrictedSet, Tribe

V_CHOICES = (0, 4, 8)


@dataclass
class TrialReport:
    steps: int = 0
    failures: list = field(default_factory=list)


def _random_restricted(rng, n):
    labels = rng.choice(n, size=rng.integers(0, n + 1), replace=False).tolist()
    return RestrictedSet(bool(rng.integers(2)), tuple(int(j) for j in labels))


def _pick_pixel(rng, pop):
    """A random pixel, biased towards the neighborhood of existing regions."""
    grid = pop.grid
    owned = list(pop.state.index.lx)
    if owned and rng.random() < 0.6:
        p = owned[rng.integers(len(owned))]
        c = grid.unravel(p)
        d = tuple(int(k) for k in rng.integers(-1, 2, size=grid.ndim))
        q = tuple(a + b for a, b in zip(c, d))
        if grid.contains(q):
            return grid.ravel(q)
    return int(rng.integers(grid.size))


def random_trial(rng: np.random.Generator, steps: int = 25, max_side: int = 16) -> TrialReport:
    """One random mutation sequence, checked against recomputation after every step.

    Grid up to ``max_side`` square, 2 to 5 regions (some created mid-run),
    random restricted sets of both polarities, one shared neighborhood drawn
    from {empty, 4, 8} with each region using it or the empty one.
    """
    h, w = (int(k) for k in rng.integers(3, max_side + 1, size=2))
    grid = Grid((h, w))
    conn = int(rng.choice(V_CHOICES))
    shared = Neighborhood.empty() if conn == 0 else Neighborhood.connectivity(conn)
    n_regions = int(rng.integers(2, 6))
    pop = Population(grid, SystemOfQueues(1, lambda x, i: OUT))
    report = TrialReport()

    def new_region():
        v = shared if rng.random() < 0.8 else Neighborhood.empty()
        pop.growth_tribe(Tribe(v, _random_restricted(rng, n_regions)))

    for _ in range(int(rng.integers(1, n_regions + 1))):
        new_region()

    for step in range(steps):
        if len(pop) < n_regions and rng.random() < 0.15:
            new_region()
            what = "create"
        else:
            i = int(rng.integers(len(pop)))
            x_i = pop.state.regions[i].pixels
            roll = rng.random()
            if roll < 0.45 or not x_i:
                what = "growth"
                pop.growth(_pick_pixel(rng, pop), i)
            elif roll < 0.75:
                what = "degrowth"
                owned = list(x_i)
                pop.degrowth(owned[rng.integers(len(owned))], i)
            elif roll < 0.85:
                what = "growth_set"
                cand = {_pick_pixel(rng, pop) for _ in range(int(rng.integers(2, 6)))}
                pop.growth_set([p for p in cand if p not in x_i], i)
            elif roll < 0.95:
                what = "degrowth_set"
                owned = list(x_i)
                k = int(rng.integers(1, len(owned) + 1))
                pop.degrowth_set(rng.choice(owned, size=k, replace=False).tolist(), i)
            else:
                what = "degrowth_all"
                pop.degrowth_all(_pick_pixel(rng, pop))
        report.steps += 1
        bad = pop.state.mismatches()
        errors = pop.state.index_errors()
        if bad or errors:
            report.failures.append((step, what, bad, errors))
    return report


def run_oracle_check(trials: int = 1000, seed: int = 0, steps: int = 25) -> tuple:
    """Run ``trials`` random trials; returns ``(trials, failed_trials, total_steps)``."""
    root = np.random.SeedSequence(seed)
    failed = 0
    total = 0
    for child in root.spawn(trials):
        rep = random_trial(np.random.default_rng(child), steps=steps)
        total += rep.steps
        failed += bool(rep.failures)
    return trials, failed, total


@dataclass
class BenchRow:
    grid_pixels: int
    regions: int
    mean_probes: float
    p99_probes: float
    samples: int
    naive_mean_probes: float = float("nan")


def probe_bench(
    side: int,
    density: float = 1 / 2048,
    warm_fraction: float = 0.2,
    measure_fraction: float = 0.05,
    max_samples: int = 2000,
    naive_samples: int = 0,
    seed: int = 0,
) -> BenchRow:
    """Probes per single-pixel growth on a ``side`` x ``side`` grid.

    Seeds are scattered at ``density`` regions per pixel and grown by FIFO
    flooding (every region excludes every other). After ``warm_fraction`` of
    the grid is covered, the probe count of each following growth is
    recorded. ``naive_samples`` growths additionally get the cost of a full
    recomputation of every zone.
    """
    rng = np.random.default_rng(seed)
    grid = Grid((side, side))
    n_regions = max(1, round(side * side * density))
    sq = SystemOfQueues(1)
    pop = Population(grid, sq)
    tribe = Tribe(Neighborhood.connectivity(4), RestrictedSet.all())
    for p in rng.choice(grid.size, size=n_regions, replace=False).tolist():
        pop.growth(p, pop.growth_tribe(tribe))

    sq.select_queue(0)
    warm = int(warm_fraction * grid.size)
    n_measure = max(1, min(max_samples, int(measure_fraction * grid.size)))
    grown = n_regions
    samples = []
    naive = []
    while len(samples) < n_measure:
        c = sq.pop_valid(pop)
        if c is None:
            break
        before = pop.probes
        pop.growth(c.pixel, c.region)
        grown += 1
        if grown > warm:
            samples.append(pop.probes - before)
            if len(naive) < naive_samples:
                naive.append(naive_recompute_all(pop.state)[1])
    arr = np.asarray(samples, dtype=float)
    return BenchRow(
        grid_pixels=grid.size,
        regions=n_regions,
        mean_probes=float(arr.mean()),
        p99_probes=float(np.percentile(arr, 99)),
        samples=len(samples),
        naive_mean_probes=float(np.mean(naive)) if naive else float("nan"),
    )
