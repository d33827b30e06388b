import numpy as np
import pytest

from srgpa import ContractError, Grid, Neighborhood, PixelSet, Population, RestrictedSet, SystemOfQueues, Tribe

from conftest import FOUR, EIGHT, ps


def zone_snapshot(pop):
    return [set(pop.Z(i)) for i in range(len(pop))]


@pytest.fixture
def pop(g4):
    return Population(g4, debug=True)


class TestGrowthTribe:
    def test_ids_in_order(self, pop):
        assert [pop.growth_tribe(Tribe(FOUR)) for _ in range(3)] == [0, 1, 2]
        assert len(pop.X(0)) == 0 and len(pop.Z(0)) == 0

    def test_shared_neighborhood_enforced(self, pop):
        pop.growth_tribe(Tribe(FOUR))
        with pytest.raises(ContractError):
            pop.growth_tribe(Tribe(EIGHT))

    def test_all_covers_later_regions(self, pop):
        a = pop.growth_tribe(Tribe(FOUR, RestrictedSet.all()))
        pop.growth((1, 1), a)
        b = pop.growth_tribe(Tribe(FOUR, RestrictedSet.all()))
        pop.growth((1, 2), b)
        assert (1, 2) not in pop.Z(a)


class TestGrowth:
    def test_seed(self, pop, g4):
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), i)
        assert pop.X(i) == ps(g4, (1, 1))
        assert pop.Z(i) == ps(g4, (0, 1), (1, 0), (1, 2), (2, 1))

    def test_owned_pixel_is_noop(self, pop):
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), i)
        before = pop.state.snapshot()
        assert pop.growth((1, 1), i) == []
        assert pop.state.snapshot() == before

    def test_rival_zone_loses_pixel(self, pop):
        a, b = pop.growth_tribe(Tribe(FOUR)), pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), a)
        pop.growth((1, 3), b)
        assert (1, 2) in pop.Z(a) and (1, 2) in pop.Z(b)
        pop.growth((1, 2), b)
        assert (1, 2) not in pop.Z(a)

    def test_invalid_id(self, pop):
        with pytest.raises(ContractError):
            pop.growth((0, 0), 0)


class TestGrowthSet:
    def test_equals_two_single_growths(self, g4):
        seed = [(0, 0), (3, 3)]
        whole = Population(g4, debug=True)
        whole.growth_set(seed, whole.growth_tribe(Tribe(FOUR)))
        for order in (seed, seed[::-1]):
            single = Population(g4, debug=True)
            i = single.growth_tribe(Tribe(FOUR))
            for x in order:
                single.growth(x, i)
            assert single.state.snapshot() == whole.state.snapshot()

    def test_empty_set(self, pop):
        i = pop.growth_tribe(Tribe(FOUR))
        assert pop.growth_set([], i) == []

    def test_l_shape(self, pop, g4):
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth_set(ps(g4, (1, 1), (2, 1), (2, 2)), i)
        assert pop.Z(i) == pop.state.naive_zi(i)

    def test_overlap_is_contract_error(self, pop):
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), i)
        with pytest.raises(ContractError):
            pop.growth_set([(1, 1), (2, 2)], i)


class TestDegrowth:
    def test_inverse_restores_state(self, pop):
        i = pop.growth_tribe(Tribe(FOUR))
        before = pop.state.snapshot()
        pop.growth((2, 2), i)
        pop.degrowth((2, 2), i)
        assert pop.state.snapshot() == before

    def test_hole_in_block(self):
        g = Grid((5, 5))
        p = Population(g, debug=True)
        i = p.growth_tribe(Tribe(FOUR))
        p.growth_set([(r, c) for r in range(1, 4) for c in range(1, 4)], i)
        p.degrowth((2, 2), i)
        assert p.Z(i) == p.state.naive_zi(i)
        assert (2, 2) in p.Z(i)

    def test_wrong_region(self, pop):
        a, b = pop.growth_tribe(Tribe(FOUR)), pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), a)
        with pytest.raises(ContractError):
            pop.degrowth((1, 1), b)

    def test_degrowth_all_overlapping(self, pop):
        none = RestrictedSet.only([])
        a, b = pop.growth_tribe(Tribe(FOUR, none)), pop.growth_tribe(Tribe(FOUR, none))
        pop.growth((1, 1), a)
        pop.growth((1, 1), b)
        assert sorted(pop.regions_at((1, 1))) == [0, 1]
        pop.degrowth_all((1, 1))
        assert pop.regions_at((1, 1)) == []

    def test_degrowth_all_noop_and_single(self, g4):
        p1, p2 = Population(g4, debug=True), Population(g4, debug=True)
        for p in (p1, p2):
            p.growth((1, 1), p.growth_tribe(Tribe(FOUR)))
        assert p1.degrowth_all((3, 3)) == []
        p1.degrowth_all((1, 1))
        p2.degrowth((1, 1), 0)
        assert p1.state.snapshot() == p2.state.snapshot()


class TestAccessors:
    def test_fresh(self, pop):
        assert pop.zones_at((0, 0)) == [] and pop.regions_at((0, 0)) == []

    def test_after_seed(self, pop):
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 1), i)
        assert pop.regions_at((1, 1)) == [0]
        assert pop.zones_at((1, 2)) == [0]

    def test_export_labels(self, pop):
        assert not pop.export_labels().any()
        i = pop.growth_tribe(Tribe(FOUR))
        pop.growth((1, 2), i)
        expected = np.zeros((4, 4), int)
        expected[1, 2] = 1
        assert np.array_equal(pop.export_labels(), expected)

    def test_export_labels_overlap(self, pop):
        none = RestrictedSet.only([])
        a, b = pop.growth_tribe(Tribe(FOUR, none)), pop.growth_tribe(Tribe(FOUR, none))
        pop.growth((1, 1), a)
        pop.growth((1, 1), b)
        with pytest.raises(ContractError, match=r"\(1, 1\)"):
            pop.export_labels()


def test_push_batch_is_exact_zone_delta():
    """The couples handed to the queues are exactly the net zone insertions."""
    rng = np.random.default_rng(11)
    g = Grid((8, 8))
    pushed = []
    sq = SystemOfQueues(1)
    sq.push_inserted = lambda batch: pushed.append(list(batch))
    pop = Population(g, sq, debug=True)
    for k in range(3):
        pop.growth_tribe(Tribe(EIGHT, RestrictedSet.all_except([k]) if k == 2 else RestrictedSet.all()))
    for _ in range(300):
        before = zone_snapshot(pop)
        i = int(rng.integers(3))
        x = int(rng.integers(g.size))
        pushed.clear()
        if x in pop.X(i):
            pop.degrowth(x, i)
        elif rng.random() < 0.2:
            pop.growth_set([y for y in {x, int(rng.integers(g.size))} if y not in pop.X(i)], i)
        else:
            pop.growth(x, i)
        after = zone_snapshot(pop)
        expected = sorted((p, j) for j in range(3) for p in after[j] - before[j])
        batch = pushed[0] if pushed else []
        assert sorted(batch) == expected
        assert len(set(batch)) == len(batch)


def test_listener_sees_effective_mutations(pop):
    seen = []
    pop.add_listener(lambda p, kind, pixels, i: seen.append((kind, pixels, i)))
    i = pop.growth_tribe(Tribe(FOUR))
    pop.growth(5, i)
    pop.growth(5, i)
    pop.degrowth(5, i)
    assert seen == [("growth", [5], 0), ("degrowth", [5], 0)]
