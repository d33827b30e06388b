import numpy as np
import pytest
from hypothesis import strategies as st

from srgpa import Grid, Neighborhood, PixelSet

FOUR = Neighborhood.connectivity(4)
EIGHT = Neighborhood.connectivity(8)


def ps(grid, *coords):
    return PixelSet(grid, coords)


@st.composite
def pixel_sets(draw, grid):
    bits = draw(st.lists(st.booleans(), min_size=grid.size, max_size=grid.size))
    return PixelSet.from_mask(grid, np.array(bits).reshape(grid.dims))


@st.composite
def neighborhoods(draw, ndim=2, radius=2, symmetric=False):
    offs = draw(st.sets(st.tuples(*[st.integers(-radius, radius)] * ndim), max_size=6))
    if symmetric:
        offs = offs | {tuple(-c for c in o) for o in offs}
    return Neighborhood(tuple(sorted(offs)))


@pytest.fixture
def g4():
    return Grid((4, 4))


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def report(number, name, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
