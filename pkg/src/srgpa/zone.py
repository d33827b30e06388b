"""Regions, zones of influence and their incremental maintenance.

The zone of influence of region ``i`` is

    Z_i = dilate(X_i, V_i) \\ union(X_j for j in N_i)

and it is kept up to date after every region fluctuation by local rules that
only look at the fluctuation's neighborhood. Each fluctuation is processed in
two fixed phases: the region's own dilation term first ("myself"), then every
zone whose exclusion term references the region ("other").

Per-pixel inverted indexes ``L_X`` (regions containing a pixel) and ``L_Z``
(zones containing a pixel) make each rule cost O(|V| + list lengths),
independent of the grid size and of the number of regions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .grid import ContractError, Grid, Neighborhood, PixelSet, dilate, set_minus


@dataclass(frozen=True)
class RestrictedSet:
    """Set of region ids excluded from a zone.

    With ``all_or_without`` true it denotes every region id except ``labels``,
    evaluated against the regions that exist at the time of the query, so
    regions created later are covered too. Otherwise it is exactly ``labels``.
    """

    all_or_without: bool = True
    labels: tuple = ()

    def __post_init__(self):
        labels = tuple(int(j) for j in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels in restricted set: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def all(cls) -> "RestrictedSet":
        return cls(True, ())

    @classmethod
    def all_except(cls, labels: Iterable[int]) -> "RestrictedSet":
        return cls(True, tuple(labels))

    @classmethod
    def only(cls, labels: Iterable[int]) -> "RestrictedSet":
        return cls(False, tuple(labels))

    def __contains__(self, j: int) -> bool:
        return (j in self.labels) != self.all_or_without

    def members(self, n: int) -> list:
        """Concrete ids among ``0..n-1``."""
        return [j for j in range(n) if j in self]


@dataclass(frozen=True)
class Tribe:
    neighborhood: Neighborhood
    restricted: RestrictedSet = field(default_factory=RestrictedSet.all)


@dataclass(eq=False)
class Region:
    id: int
    pixels: PixelSet
    tribe: Tribe


@dataclass(eq=False)
class ZoneOfInfluence:
    owner: int
    pixels: PixelSet


class MembershipIndexes:
    """``L_X`` and ``L_Z``: for each pixel, the regions / zones containing it.

    Lists are short, unordered and use swap-remove; pixels with an empty list
    have no entry.
    """

    def __init__(self):
        self.lx: dict = {}
        self.lz: dict = {}

    @staticmethod
    def _add(table: dict, p: int, i: int) -> None:
        lst = table.get(p)
        if lst is None:
            table[p] = [i]
        else:
            lst.append(i)

    @staticmethod
    def _remove(table: dict, p: int, i: int) -> None:
        lst = table[p]
        k = lst.index(i)
        last = lst.pop()
        if k < len(lst):
            lst[k] = last
        if not lst:
            del table[p]

    def regions_at(self, p: int) -> list:
        return list(self.lx.get(p, ()))

    def zones_at(self, p: int) -> list:
        return list(self.lz.get(p, ()))

    def canonical(self) -> tuple:
        return (
            tuple(sorted((p, tuple(sorted(v))) for p, v in self.lx.items())),
            tuple(sorted((p, tuple(sorted(v))) for p, v in self.lz.items())),
        )


def naive_zi(regions: Sequence[Region], i: int) -> PixelSet:
    """Zone of region ``i`` recomputed from scratch with whole-set operations."""
    if not 0 <= i < len(regions):
        raise ContractError(f"unknown region id {i}")
    region = regions[i]
    grown = dilate(region.pixels, region.tribe.neighborhood)
    for j in region.tribe.restricted.members(len(regions)):
        grown = set_minus(grown, regions[j].pixels)
    return grown


class ZoneState:
    """Regions, their zones and the membership indexes of one population.

    All non-empty region neighborhoods must be equal; the degrowth rule for
    the "other" phase is only valid under that assumption, so a mismatch is
    rejected when the region is created.

    ``probes`` counts pixel-membership probes (mask tests and index-list
    entries examined) and is what the complexity benchmark reads.
    """

    def __init__(self, grid: Grid):
        self.grid = grid
        self.regions: list = []
        self.zones: list = []
        self.index = MembershipIndexes()
        self.shared_v = None
        self.probes = 0
        self._reflected: dict = {}

    # -- region lifecycle -------------------------------------------------

    def add_region(self, tribe: Tribe) -> int:
        v = tribe.neighborhood
        if not v.is_empty:
            if v.ndim != self.grid.ndim:
                raise ContractError(f"{v.ndim}D neighborhood on a {self.grid.ndim}D grid")
            if self.shared_v is None:
                self.shared_v = v
            elif v != self.shared_v:
                raise ContractError(
                    f"neighborhood {v!r} differs from the population's shared {self.shared_v!r}"
                )
        i = len(self.regions)
        self.regions.append(Region(i, PixelSet(self.grid), tribe))
        self.zones.append(ZoneOfInfluence(i, PixelSet(self.grid)))
        return i

    def _region(self, i: int) -> Region:
        if not 0 <= i < len(self.regions):
            raise ContractError(f"unknown region id {i}")
        return self.regions[i]

    def _reflect(self, v: Neighborhood) -> Neighborhood:
        r = self._reflected.get(v.offsets)
        if r is None:
            r = self._reflected[v.offsets] = v.reflect()
        return r

    def attach(self, i: int, a: Sequence[int]) -> None:
        """Add pixels to ``X_i`` and ``L_X`` without touching any zone."""
        px = self.regions[i].pixels
        for x in a:
            px.add(x)
            MembershipIndexes._add(self.index.lx, x, i)

    def detach(self, i: int, a: Sequence[int]) -> None:
        px = self.regions[i].pixels
        for x in a:
            px.discard(x)
            MembershipIndexes._remove(self.index.lx, x, i)

    def _zone_insert(self, j: int, x: int) -> None:
        self.zones[j].pixels.add(x)
        MembershipIndexes._add(self.index.lz, x, j)

    def _zone_remove(self, j: int, x: int) -> None:
        self.zones[j].pixels.discard(x)
        MembershipIndexes._remove(self.index.lz, x, j)

    def _excluded(self, x: int, restricted: RestrictedSet) -> bool:
        """Whether ``x`` lies in the union of the regions listed by ``restricted``."""
        owners = self.index.lx.get(x)
        if not owners:
            self.probes += 1
            return False
        for j in owners:
            self.probes += 1
            if j in restricted:
                return True
        return False

    # -- the four actualization rules ------------------------------------

    def actualize_growth_myself(self, i: int, a: Sequence[int]) -> list:
        """Growth, own-dilation phase. Returns pixels inserted into ``Z_i``.

        Must run before ``a`` is attached: the exclusion union is evaluated
        at its pre-growth value.
        """
        tribe = self._region(i).tribe
        v = tribe.neighborhood
        if v.is_empty:
            return []
        zone = self.zones[i].pixels
        inserted = []
        for x in a:
            for y in self.grid.neighbors(x, v):
                self.probes += 1
                if y in zone:
                    continue
                if self._excluded(y, tribe.restricted):
                    continue
                self._zone_insert(i, y)
                inserted.append(y)
        return inserted

    def actualize_growth_other(self, i: int, a: Sequence[int]) -> list:
        """Growth, exclusion phase. Returns ``(j, x)`` pairs removed from ``Z_j``."""
        removed = []
        for x in a:
            holders = self.index.lz.get(x)
            if not holders:
                self.probes += 1
                continue
            for j in list(holders):
                self.probes += 1
                tribe = self.regions[j].tribe
                if i in tribe.restricted and not tribe.neighborhood.is_empty:
                    self._zone_remove(j, x)
                    removed.append((j, x))
        return removed

    def actualize_degrowth_myself(self, i: int, a: Sequence[int]) -> list:
        """Degrowth, own-dilation phase. Returns pixels removed from ``Z_i``.

        Runs after ``a`` has been detached from ``X_i``.
        """
        region = self._region(i)
        v = region.tribe.neighborhood
        if v.is_empty:
            return []
        back = self._reflect(v)
        own = region.pixels
        zone = self.zones[i].pixels
        removed = []
        for x in a:
            for y in self.grid.neighbors(x, v):
                self.probes += 1
                if y not in zone:
                    continue
                still_covered = False
                for z in self.grid.neighbors(y, back):
                    self.probes += 1
                    if z in own:
                        still_covered = True
                        break
                if not still_covered:
                    self._zone_remove(i, y)
                    removed.append(y)
        return removed

    def actualize_degrowth_other(self, i: int, a: Sequence[int]) -> list:
        """Degrowth, exclusion phase. Returns ``(j, x)`` pairs inserted into ``Z_j``.

        Candidate zones are found through the regions that touch ``x`` via the
        reflected shared neighborhood.
        """
        if self.shared_v is None:
            return []
        back = self._reflect(self.shared_v)
        inserted = []
        for x in a:
            candidates = []
            for y in self.grid.neighbors(x, back):
                owners = self.index.lx.get(y)
                self.probes += 1
                if owners:
                    for j in owners:
                        self.probes += 1
                        if j not in candidates:
                            candidates.append(j)
            for j in candidates:
                tribe = self.regions[j].tribe
                if tribe.neighborhood.is_empty or i not in tribe.restricted:
                    continue
                if self._excluded(x, tribe.restricted):
                    continue
                self.probes += 1
                if x in self.zones[j].pixels:
                    continue
                self._zone_insert(j, x)
                inserted.append((j, x))
        return inserted

    # -- composite fluctuations -------------------------------------------

    def grow(self, i: int, a: Sequence[int]) -> list:
        """Add ``a`` (disjoint from ``X_i``) to region ``i``.

        Returns the couples ``(x, j)`` that entered some zone, i.e. pixels
        outside ``Z_j`` before and inside after, in insertion order.
        """
        region = self._region(i)
        for x in a:
            if x in region.pixels:
                raise ContractError(f"pixel {self.grid.unravel(x)} already in region {i}")
        inserted = self.actualize_growth_myself(i, a)
        self.attach(i, a)
        removed = self.actualize_growth_other(i, a)
        if removed:
            gone = {x for j, x in removed if j == i}
            return [(x, i) for x in inserted if x not in gone]
        return [(x, i) for x in inserted]

    def degrow(self, i: int, a: Sequence[int]) -> list:
        """Remove ``a`` (a subset of ``X_i``) from region ``i``; same return as ``grow``."""
        region = self._region(i)
        for x in a:
            if x not in region.pixels:
                raise ContractError(f"pixel {self.grid.unravel(x)} not in region {i}")
        self.detach(i, a)
        removed = self.actualize_degrowth_myself(i, a)
        inserted = self.actualize_degrowth_other(i, a)
        if removed:
            gone = set(removed)
            return [(x, j) for j, x in inserted if not (j == i and x in gone)]
        return [(x, j) for j, x in inserted]

    # -- inspection -------------------------------------------------------

    def naive_zi(self, i: int) -> PixelSet:
        return naive_zi(self.regions, i)

    def mismatches(self) -> list:
        """Region ids whose maintained zone differs from the recomputed one."""
        return [i for i in range(len(self.regions)) if self.zones[i].pixels != self.naive_zi(i)]

    def index_errors(self) -> list:
        """Full-scan check of ``L_X``/``L_Z`` against the masks; returns a list of messages."""
        errors = []
        for name, table, sets in (
            ("L_X", self.index.lx, [r.pixels for r in self.regions]),
            ("L_Z", self.index.lz, [z.pixels for z in self.zones]),
        ):
            expected: dict = {}
            for i, s in enumerate(sets):
                for p in s:
                    expected.setdefault(p, []).append(i)
            got = {p: sorted(v) for p, v in table.items()}
            if got != expected:
                bad = sorted(p for p in set(got) | set(expected) if got.get(p) != expected.get(p))
                errors.append(f"{name} disagrees with masks at flat pixels {bad[:5]}")
        return errors

    def snapshot(self) -> tuple:
        """Hashable canonical form of the observable state (for deep equality)."""
        return (
            tuple(bytes(r.pixels._bits) for r in self.regions),
            tuple(bytes(z.pixels._bits) for z in self.zones),
            self.index.canonical(),
        )
