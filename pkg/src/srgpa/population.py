"""The population: the public mutation surface over regions, zones and queues."""
from __future__ import annotations

from typing import Callable, Iterable, Optional, Union

import numpy as np

from .grid import ContractError, Grid, PixelLike, PixelSet
from .queues import SystemOfQueues
from .zone import Tribe, ZoneState


class Population:
    """Regions with their zones of influence, fed into a system of queues.

    Starts with no regions. Every zone change caused by a growth or degrowth
    is reported to ``sq`` as the batch of couples that entered a zone.

    With ``debug=True`` every public mutation is followed by a full
    recomputation of all zones, and a mismatch raises ``AssertionError``.
    """

    def __init__(
        self,
        grid: Union[Grid, tuple],
        sq: Optional[SystemOfQueues] = None,
        debug: bool = False,
    ):
        self.grid = grid if isinstance(grid, Grid) else Grid(tuple(grid))
        self.sq = sq if sq is not None else SystemOfQueues()
        self.state = ZoneState(self.grid)
        self.debug = debug
        self._listeners: list = []

    # -- lifecycle ----------------------------------------------------------

    def growth_tribe(self, tribe: Tribe) -> int:
        """Append an empty region (and empty zone) parameterized by ``tribe``."""
        return self.state.add_region(tribe)

    def __len__(self):
        return len(self.state.regions)

    @property
    def shared_v(self):
        return self.state.shared_v

    def add_listener(self, fn: Callable) -> None:
        """Call ``fn(population, kind, pixels, region)`` after every effective mutation."""
        self._listeners.append(fn)

    def remove_listener(self, fn: Callable) -> None:
        self._listeners.remove(fn)

    # -- mutations ----------------------------------------------------------

    def _check_id(self, i: int) -> None:
        if not 0 <= i < len(self.state.regions):
            raise ContractError(f"unknown region id {i}")

    def _after(self, kind: str, pixels: list, i: int, batch: list) -> list:
        self.sq.push_inserted(batch)
        if self.debug:
            self.verify()
        for fn in self._listeners:
            fn(self, kind, pixels, i)
        return batch

    def growth(self, x: PixelLike, i: int) -> list:
        """Add pixel ``x`` to region ``i``; a no-op if ``x`` is already there.

        Returns the couples pushed towards the queues (before filtering by
        the ordering function).
        """
        self._check_id(i)
        p = self.grid.ravel(x)
        if p in self.state.regions[i].pixels:
            return []
        batch = self.state.grow(i, [p])
        return self._after("growth", [p], i, batch)

    def growth_set(self, a: Union[PixelSet, Iterable[PixelLike]], i: int) -> list:
        """Add a set of pixels (disjoint from ``X_i``) to region ``i`` in one fluctuation.

        Pixels are processed in ascending flat-index order.
        """
        self._check_id(i)
        if not isinstance(a, PixelSet):
            a = PixelSet(self.grid, a)
        elif a.grid != self.grid:
            raise ContractError(f"set on grid {a.grid.dims}, population on {self.grid.dims}")
        pixels = list(a)
        if not pixels:
            return []
        batch = self.state.grow(i, pixels)
        return self._after("growth", pixels, i, batch)

    def degrowth(self, x: PixelLike, i: int) -> list:
        """Remove pixel ``x`` from region ``i``; ``x`` must belong to it."""
        self._check_id(i)
        p = self.grid.ravel(x)
        batch = self.state.degrow(i, [p])
        return self._after("degrowth", [p], i, batch)

    def degrowth_set(self, a: Union[PixelSet, Iterable[PixelLike]], i: int) -> list:
        self._check_id(i)
        if not isinstance(a, PixelSet):
            a = PixelSet(self.grid, a)
        pixels = list(a)
        if not pixels:
            return []
        batch = self.state.degrow(i, pixels)
        return self._after("degrowth", pixels, i, batch)

    def degrowth_all(self, x: PixelLike) -> list:
        """Remove ``x`` from every region holding it, in ascending id order."""
        p = self.grid.ravel(x)
        batch = []
        for i in sorted(self.state.index.regions_at(p)):
            batch.extend(self.degrowth(p, i))
        return batch

    # -- accessors ------------------------------------------------------------

    def zones_at(self, x: PixelLike) -> list:
        return self.state.index.zones_at(self.grid.ravel(x))

    def regions_at(self, x: PixelLike) -> list:
        return self.state.index.regions_at(self.grid.ravel(x))

    def in_zone(self, x: int, i: int) -> bool:
        return x in self.state.zones[i].pixels

    def X(self, i: int) -> PixelSet:
        self._check_id(i)
        return self.state.regions[i].pixels.copy()

    def Z(self, i: int) -> PixelSet:
        self._check_id(i)
        return self.state.zones[i].pixels.copy()

    def tribe(self, i: int) -> Tribe:
        self._check_id(i)
        return self.state.regions[i].tribe

    @property
    def probes(self) -> int:
        return self.state.probes

    def export_labels(self) -> np.ndarray:
        """Label map with ``id + 1`` on region pixels and 0 elsewhere.

        Regions must be pairwise disjoint.
        """
        labels = np.zeros(self.grid.size, dtype=np.int32)
        for p, owners in self.state.index.lx.items():
            if len(owners) > 1:
                raise ContractError(
                    f"pixel {self.grid.unravel(p)} belongs to regions {sorted(owners)}"
                )
            labels[p] = owners[0] + 1
        return labels.reshape(self.grid.dims)

    def verify(self) -> None:
        """Recompute every zone from scratch and compare; raise on mismatch."""
        bad = self.state.mismatches()
        if bad:
            raise AssertionError(f"incremental zones disagree with recomputation for regions {bad}")
        errors = self.state.index_errors()
        if errors:
            raise AssertionError("; ".join(errors))
