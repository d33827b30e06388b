"""Growing algorithms written only against the Population / queue API."""
from __future__ import annotations

from typing import Callable, Optional, Sequence

import numpy as np

from .grid import Grid, Neighborhood
from .population import Population
from .queues import FIFO, OUT, SystemOfQueues
from .zone import RestrictedSet, Tribe

#: ``seeds[label]`` is the list of pixels (coordinate tuples) seeding region ``label``.
SeedSpec = Sequence[Sequence[tuple]]


class SeedError(ValueError):
    """Seeds are off-grid, on excluded pixels, or overlap."""


def validate_seeds(grid: Grid, seeds: SeedSpec, allowed: Optional[np.ndarray] = None) -> list:
    """Return the seeds as lists of flat indices, checking the seed contract."""
    owner: dict = {}
    out = []
    for label, pixels in enumerate(seeds):
        flat = []
        for x in pixels:
            try:
                p = grid.ravel(x)
            except IndexError as e:
                raise SeedError(f"seed {label}: {e}") from None
            if allowed is not None and not allowed[p]:
                raise SeedError(f"seed {label}: pixel {grid.unravel(p)} is not on the island")
            prev = owner.setdefault(p, label)
            if prev != label:
                raise SeedError(
                    f"pixel {grid.unravel(p)} is claimed by seeds {prev} and {label}"
                )
            flat.append(p)
        out.append(flat)
    return out


class FrameRecorder:
    """Label-map snapshots taken every ``every`` mutation events.

    The first frame is taken on :meth:`attach`; :meth:`close` adds a final
    frame unless the last event already produced one. With ``sink`` set,
    frames are handed to ``sink(index, labels)`` instead of being kept.
    """

    def __init__(self, every: int, sink: Optional[Callable] = None):
        if every < 1:
            raise ValueError(f"frame interval must be >= 1, got {every}")
        self.every = every
        self.sink = sink
        self.frames: list = []
        self.events = 0
        self.emitted = 0
        self._pop = None

    def _emit(self, pop: Population) -> None:
        labels = pop.export_labels()
        if self.sink is None:
            self.frames.append(labels)
        else:
            self.sink(self.emitted, labels)
        self.emitted += 1

    def _on_event(self, pop, kind, pixels, region) -> None:
        self.events += 1
        if self.events % self.every == 0:
            self._emit(pop)

    def attach(self, pop: Population) -> "FrameRecorder":
        self._pop = pop
        self._emit(pop)
        pop.add_listener(self._on_event)
        return self

    def close(self) -> None:
        if self._pop is None:
            return
        if self.events % self.every:
            self._emit(self._pop)
        self._pop.remove_listener(self._on_event)
        self._pop = None

    def __iter__(self):
        return iter(self.frames)

    def __len__(self):
        return len(self.frames)


def frame_hook(pop: Population, every_k: int, sink: Optional[Callable] = None) -> FrameRecorder:
    """Attach a :class:`FrameRecorder` to ``pop`` and return it."""
    return FrameRecorder(every_k, sink).attach(pop)


def _plant(pop: Population, tribe: Tribe, seeds: list) -> None:
    for pixels in seeds:
        i = pop.growth_tribe(tribe)
        pop.growth_set(pixels, i)


def geodesic_dilation(
    mask,
    seeds: SeedSpec,
    v: Optional[Neighborhood] = None,
    frames: Optional[FrameRecorder] = None,
) -> np.ndarray:
    """Grow every seed inside the nonzero pixels of ``mask`` until nothing is left.

    One FIFO queue; couples on zero pixels are never stored. Each region
    excludes all regions from its zone, so the result is a partition of the
    reachable part of the mask. Ties go to the region that exposed the pixel
    first; seeds are planted in label order.

    Returns a label map: ``label + 1`` on grown pixels, 0 elsewhere.
    """
    mask = np.asarray(mask) != 0
    grid = Grid(mask.shape)
    v = v if v is not None else Neighborhood.connectivity(4, grid.ndim)
    island = mask.ravel().tolist()
    flat_seeds = validate_seeds(grid, seeds, island)

    sq = SystemOfQueues(1, lambda x, i: 0 if island[x] else OUT, FIFO)
    pop = Population(grid, sq)
    if frames is not None:
        frames.attach(pop)
    _plant(pop, Tribe(v, RestrictedSet.all()), flat_seeds)

    sq.select_queue(0)
    while not sq.empty():
        c = sq.pop_valid(pop)
        if c is None:
            break
        pop.growth(c.pixel, c.region)

    if frames is not None:
        frames.close()
    return pop.export_labels()


def ordered_growing(
    image,
    seeds: SeedSpec,
    v: Optional[Neighborhood] = None,
    n_levels: Optional[int] = None,
    frames: Optional[FrameRecorder] = None,
) -> np.ndarray:
    """Flooding-style growth: the lowest-valued exposed pixel is aggregated first.

    Couples go to the bucket given by the pixel's gray level. After every
    growth the lowest non-empty bucket is selected again, since a growth can
    push into a lower bucket. Within a bucket, entering order decides.
    """
    image = np.asarray(image)
    if not np.issubdtype(image.dtype, np.integer):
        raise ValueError(f"image must hold integer levels, got dtype {image.dtype}")
    grid = Grid(image.shape)
    if n_levels is None:
        n_levels = int(image.max()) + 1 if image.size else 1
    if image.size and (image.min() < 0 or image.max() >= n_levels):
        raise ValueError(f"image values must lie in [0, {n_levels}), "
                         f"got [{image.min()}, {image.max()}]")
    v = v if v is not None else Neighborhood.connectivity(4, grid.ndim)
    levels = image.ravel().tolist()
    flat_seeds = validate_seeds(grid, seeds)

    sq = SystemOfQueues(n_levels, lambda x, i: levels[x], FIFO)
    pop = Population(grid, sq)
    if frames is not None:
        frames.attach(pop)
    _plant(pop, Tribe(v, RestrictedSet.all()), flat_seeds)

    while True:
        k = sq.lowest_nonempty()
        if k is None:
            break
        sq.select_queue(k)
        c = sq.pop_valid(pop)
        if c is not None:
            pop.growth(c.pixel, c.region)

    if frames is not None:
        frames.close()
    return pop.export_labels()
