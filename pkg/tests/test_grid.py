import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from srgpa import ContractError, Grid, Neighborhood, PixelSet
from srgpa.grid import dilate, disjoint_add, reflect, set_minus, subtract

from conftest import FOUR, EIGHT, neighborhoods, pixel_sets, ps

G12 = Grid((12, 12))
G5 = Grid((5, 5))


def brute_dilate(grid, coords, offsets):
    out = set()
    for c in coords:
        for o in offsets:
            q = tuple(a + b for a, b in zip(c, o))
            if grid.contains(q):
                out.add(q)
    return out


class TestGrid:
    def test_row_major_bijection(self):
        g = Grid((3, 4, 5))
        flat = [g.ravel(c) for c in itertools.product(range(3), range(4), range(5))]
        assert flat == list(range(60))
        assert all(g.unravel(p) == c for p, c in zip(flat, itertools.product(range(3), range(4), range(5))))

    @pytest.mark.parametrize("dims", [(0, 3), (3,), (2, 2, 2, 2), (-1, 4)])
    def test_rejects_bad_dims(self, dims):
        with pytest.raises(ValueError):
            Grid(dims)

    def test_ravel_out_of_grid(self, g4):
        with pytest.raises(IndexError):
            g4.ravel((4, 0))
        with pytest.raises(IndexError):
            g4.ravel(16)


class TestNeighborhood:
    def test_builtins(self):
        assert len(FOUR) == 4 and len(EIGHT) == 8
        assert len(Neighborhood.connectivity(6, 3)) == 6
        assert len(Neighborhood.connectivity(26, 3)) == 26
        for v in (FOUR, EIGHT, Neighborhood.connectivity(26, 3)):
            assert v.is_symmetric
            assert all(any(o) for o in v.offsets)

    def test_empty(self):
        e = Neighborhood.empty()
        assert e.is_empty and e.offsets == () and e.is_symmetric

    def test_duplicates_rejected(self):
        with pytest.raises(ValueError):
            Neighborhood(((1, 0), (1, 0)))

    def test_symmetry_query(self):
        assert not Neighborhood(((1, 0),)).is_symmetric
        assert Neighborhood(((1, 0), (-1, 0))).is_symmetric

    def test_reflect_examples(self):
        assert reflect(Neighborhood(((1, 0),))) == Neighborhood(((-1, 0),))
        assert reflect(FOUR) == FOUR
        assert reflect(Neighborhood(((1, 0), (0, 1)))) == Neighborhood(((-1, 0), (0, -1)))
        assert reflect(Neighborhood.empty()).is_empty


class TestPixelSet:
    def test_count_tracks_mask(self, g4):
        s = PixelSet(g4)
        assert s.add((1, 1)) and not s.add((1, 1))
        s.add(0)
        assert len(s) == 2 == s.mask.sum()
        assert s.discard((1, 1)) and not s.discard((1, 1))
        assert len(s) == 1 and (0, 0) in s and (1, 1) not in s

    def test_iteration_is_ascending_flat(self, g4):
        s = ps(g4, (3, 3), (0, 2), (1, 0))
        assert list(s) == [2, 4, 15]
        assert s.coords() == [(0, 2), (1, 0), (3, 3)]

    def test_mask_roundtrip(self):
        rng = np.random.default_rng(1)
        m = rng.random((7, 9)) < 0.3
        s = PixelSet.from_mask(Grid((7, 9)), m)
        assert np.array_equal(s.mask, m) and len(s) == m.sum()


class TestDilate:
    def test_single_pixel_four(self, g4):
        assert dilate(ps(g4, (1, 1)), FOUR) == ps(g4, (0, 1), (1, 0), (1, 2), (2, 1))

    def test_empty_neighborhood(self, g4):
        assert len(dilate(ps(g4, (1, 1)), Neighborhood.empty())) == 0

    def test_corner_is_clipped(self, g4):
        expected = brute_dilate(g4, [(0, 0)], FOUR.offsets)
        assert expected == {(0, 1), (1, 0)}
        assert set(dilate(ps(g4, (0, 0)), FOUR).coords()) == expected

    def test_offset_larger_than_grid(self, g4):
        v = Neighborhood(((5, 0), (0, 1)))
        assert dilate(ps(g4, (1, 1)), v) == ps(g4, (1, 2))

    def test_three_d(self):
        g = Grid((3, 3, 3))
        out = dilate(ps(g, (0, 0, 0)), Neighborhood.connectivity(26, 3))
        assert len(out) == 7

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_matches_brute_force(self, data):
        s = data.draw(pixel_sets(G5))
        v = data.draw(neighborhoods())
        assert set(dilate(s, v).coords()) == brute_dilate(G5, s.coords(), v.offsets)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_distributes_over_union(self, data):
        a = data.draw(pixel_sets(G5))
        b = data.draw(pixel_sets(G5))
        v = data.draw(neighborhoods())
        assert dilate(a | b, v) == dilate(a, v) | dilate(b, v)

    @settings(max_examples=30, deadline=None)
    @given(neighborhoods())
    def test_reflection_adjointness(self, v):
        g = Grid((4, 5))
        for x in range(g.size):
            dx = dilate(PixelSet(g, [x]), v)
            for y in range(g.size):
                assert (y in dx) == (x in dilate(PixelSet(g, [y]), reflect(v)))


class TestSetOperators:
    def test_disjoint_add(self, g4):
        assert disjoint_add(ps(g4, (0, 0)), ps(g4, (1, 1))) == ps(g4, (0, 0), (1, 1))
        assert disjoint_add(PixelSet(g4), ps(g4, (2, 2))) == ps(g4, (2, 2))
        with pytest.raises(ContractError, match=r"\(0, 0\)"):
            disjoint_add(ps(g4, (0, 0)), ps(g4, (0, 0)))

    def test_subtract(self, g4):
        a = ps(g4, (0, 0), (1, 1))
        assert subtract(a, ps(g4, (1, 1))) == ps(g4, (0, 0))
        assert subtract(a, PixelSet(g4)) == a
        with pytest.raises(ContractError, match=r"\(3, 3\)"):
            subtract(ps(g4, (0, 0)), ps(g4, (3, 3)))

    def test_set_minus(self, g4):
        a = ps(g4, (0, 0), (1, 1))
        assert set_minus(a, ps(g4, (1, 1), (2, 2))) == ps(g4, (0, 0))
        assert len(set_minus(a, a)) == 0
        assert set_minus(a, PixelSet(g4)) == a

    def test_grid_mismatch(self, g4):
        with pytest.raises(ContractError):
            set_minus(PixelSet(g4), PixelSet(Grid((4, 5))))

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_add_subtract_inverse(self, data):
        a = data.draw(pixel_sets(G5))
        b = set_minus(data.draw(pixel_sets(G5)), a)
        assert subtract(disjoint_add(a, b), b) == a

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_lemma_identities(self, data):
        a = data.draw(pixel_sets(G5))
        b = data.draw(pixel_sets(G5))
        v = data.draw(neighborhoods(symmetric=True))
        assert a == set_minus(a | b, set_minus(b, a))
        av = dilate(a, v)
        assert av == set_minus(dilate(a | b, v), set_minus(dilate(b, v), av))
