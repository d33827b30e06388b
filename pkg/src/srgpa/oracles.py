"""Reference implementations that do not go through the zone machinery.

These exist to check the engine: plain breadth-first and priority-flood
labelings on coordinate tuples, and a recompute-everything zone baseline.
"""
from __future__ import annotations

import heapq
from collections import deque
from typing import Sequence

import numpy as np

from .grid import dilate, set_minus
from .zone import ZoneState


def _step(shape, c, o):
    n = tuple(a + b for a, b in zip(c, o))
    if all(0 <= k < d for k, d in zip(n, shape)):
        return n
    return None


def bfs_geodesic_labels(mask, seeds: Sequence[Sequence[tuple]], offsets) -> np.ndarray:
    """Multi-source FIFO BFS restricted to ``mask``.

    All seed pixels are labeled first; the queue then starts with seed 0's
    pixels in row-major order, then seed 1's, and so on. A pixel takes the
    label of whichever queued pixel discovers it first; neighbors are visited
    in ``offsets`` order.
    """
    mask = np.asarray(mask) != 0
    labels = np.zeros(mask.shape, dtype=np.int32)
    queue = deque()
    for lab, pixels in enumerate(seeds):
        for c in sorted(tuple(p) for p in pixels):
            labels[c] = lab + 1
            queue.append(c)
    while queue:
        c = queue.popleft()
        for o in offsets:
            n = _step(mask.shape, c, o)
            if n is not None and mask[n] and labels[n] == 0:
                labels[n] = labels[c]
                queue.append(n)
    return labels


def priority_flood_labels(image, seeds: Sequence[Sequence[tuple]], offsets) -> np.ndarray:
    """Heap-ordered flood: pixels are labeled in (gray level, discovery order).

    Every unlabeled neighbor of a newly labeled pixel is queued with its
    gray level and a running counter; a popped pixel that is already
    labeled is skipped.
    """
    image = np.asarray(image)
    labels = np.zeros(image.shape, dtype=np.int32)
    heap = []
    seq = 0
    ordered = [sorted(tuple(p) for p in pixels) for pixels in seeds]
    for lab, pixels in enumerate(ordered):
        for c in pixels:
            labels[c] = lab + 1

    def expose(c, lab):
        nonlocal seq
        for o in offsets:
            n = _step(image.shape, c, o)
            if n is not None and labels[n] == 0:
                heapq.heappush(heap, (int(image[n]), seq, n, lab))
                seq += 1

    for lab, pixels in enumerate(ordered):
        for c in pixels:
            expose(c, lab + 1)
    while heap:
        _, _, n, lab = heapq.heappop(heap)
        if labels[n]:
            continue
        labels[n] = lab
        expose(n, lab)
    return labels


def naive_recompute_all(state: ZoneState) -> tuple:
    """Recompute every zone from scratch, the way a non-incremental engine would.

    Returns ``(zones, probes)`` where ``probes`` counts pointwise dilation
    work (|X_i| * |V_i|) plus one probe per grid pixel for every whole-grid
    set difference.
    """
    regions = state.regions
    n = len(regions)
    size = state.grid.size
    zones = []
    probes = 0
    for r in regions:
        z = dilate(r.pixels, r.tribe.neighborhood)
        probes += len(r.pixels) * len(r.tribe.neighborhood)
        for j in r.tribe.restricted.members(n):
            z = set_minus(z, regions[j].pixels)
            probes += size
        zones.append(z)
    return zones, probes
