"""System of queues: labeled buckets of (pixel, region) couples.

Couples are filed by an ordering function into one of ``n_queues`` buckets,
or dropped when it answers :data:`OUT`. Couples that leave their zone are not
removed eagerly; :meth:`SystemOfQueues.pop_valid` discards them when they
surface.
"""
from __future__ import annotations

import operator
import random
from collections import deque
from typing import Callable, Iterable, NamedTuple, Optional


class _Out:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OUT"

    def __reduce__(self):
        return (_Out, ())


#: Label returned by an ordering function for couples that must not be stored.
OUT = _Out()

FIFO = "fifo"
RANDOM = "random"


class ConfigurationError(ValueError):
    """The queue system was set up or driven inconsistently."""


class Couple(NamedTuple):
    pixel: int
    region: int
    enter_seq: int


class _Bucket:
    __slots__ = ("items", "pushed", "popped", "discarded")

    def __init__(self, discipline):
        self.items = deque() if discipline == FIFO else []
        self.pushed = 0
        self.popped = 0
        self.discarded = 0


class SystemOfQueues:
    """``n_queues`` buckets fed through the ordering function ``delta(pixel, region)``.

    With the FIFO discipline a bucket pops in entering order; with RANDOM it
    pops a uniformly chosen couple using a generator seeded by ``seed``.
    """

    def __init__(
        self,
        n_queues: int = 1,
        delta: Optional[Callable[[int, int], object]] = None,
        discipline: str = FIFO,
        seed: Optional[int] = None,
    ):
        if n_queues < 1:
            raise ConfigurationError(f"need at least one queue, got {n_queues}")
        if discipline not in (FIFO, RANDOM):
            raise ConfigurationError(f"unknown discipline {discipline!r}")
        self.n_queues = n_queues
        self.delta = delta if delta is not None else (lambda x, i: 0)
        self.discipline = discipline
        self.rng = random.Random(seed)
        self.buckets = [_Bucket(discipline) for _ in range(n_queues)]
        self.selected: Optional[int] = None
        self.seq_counter = 0

    def push_inserted(self, inserted: Iterable[tuple]) -> int:
        """File every ``(pixel, region)`` couple; returns how many were stored."""
        stored = 0
        for x, i in inserted:
            k = self.delta(x, i)
            if k is OUT:
                continue
            label = k
            try:
                k = operator.index(k)
            except TypeError:
                k = -1
            if not 0 <= k < self.n_queues:
                raise ConfigurationError(
                    f"ordering function gave label {label!r} for ({x}, {i}); "
                    f"expected 0..{self.n_queues - 1} or OUT"
                )
            b = self.buckets[k]
            b.items.append(Couple(x, i, self.seq_counter))
            b.pushed += 1
            self.seq_counter += 1
            stored += 1
        return stored

    def select_queue(self, k: int) -> None:
        if not 0 <= k < self.n_queues:
            raise ConfigurationError(f"queue {k} out of range 0..{self.n_queues - 1}")
        self.selected = k

    def _current(self) -> _Bucket:
        if self.selected is None:
            raise ConfigurationError("no queue selected")
        return self.buckets[self.selected]

    def empty(self) -> bool:
        """True when the selected bucket holds no couples."""
        return not self._current().items

    def _take(self, b: _Bucket) -> Couple:
        if not b.items:
            raise ConfigurationError(f"pop from empty queue {self.selected}")
        if self.discipline == FIFO:
            return b.items.popleft()
        items = b.items
        k = self.rng.randrange(len(items))
        items[k], items[-1] = items[-1], items[k]
        return items.pop()

    def pop(self) -> Couple:
        """Remove and return a couple of the selected bucket without validating it."""
        b = self._current()
        c = self._take(b)
        b.popped += 1
        return c

    def pop_valid(self, zones) -> Optional[Couple]:
        """Pop until a couple ``(x, i)`` with ``x`` currently in ``Z_i`` appears.

        ``zones`` answers ``in_zone(x, i)``. Stale couples are discarded.
        Returns None once the selected bucket is exhausted.
        """
        b = self._current()
        while b.items:
            c = self._take(b)
            if zones.in_zone(c.pixel, c.region):
                b.popped += 1
                return c
            b.discarded += 1
        return None

    def lowest_nonempty(self) -> Optional[int]:
        for k, b in enumerate(self.buckets):
            if b.items:
                return k
        return None

    def stats(self, k: int) -> dict:
        b = self.buckets[k]
        return {"pushed": b.pushed, "popped": b.popped, "discarded": b.discarded,
                "stored": len(b.items)}

    def __len__(self):
        return sum(len(b.items) for b in self.buckets)
