"""Watch zones of influence follow a few hand-made growths and degrowths.

After each step the incrementally maintained zones are compared with a
from-scratch recomputation, and the couples pushed to the queue are shown.
"""
from srgpa import Grid, Neighborhood, Population, RestrictedSet, SystemOfQueues, Tribe

grid = Grid((5, 7))
sq = SystemOfQueues(1)
pop = Population(grid, sq)
four = Neighborhood.connectivity(4)

a = pop.growth_tribe(Tribe(four, RestrictedSet.all()))        # excludes everyone
b = pop.growth_tribe(Tribe(four, RestrictedSet.only([1])))  # ignores region a
print(f"region {a} excludes all regions, region {b} only itself")


def show(title, pushed):
    print(f"\n{title}")
    for i in range(len(pop)):
        rows = []
        for r in range(grid.dims[0]):
            line = ""
            for c in range(grid.dims[1]):
                p = grid.ravel((r, c))
                line += "#" if p in pop.X(i) else ("z" if pop.in_zone(p, i) else ".")
            rows.append(line)
        print(f"  region {i}:  " + "  ".join(rows))
    print("  pushed:", [(grid.unravel(x), i) for x, i in pushed])
    print("  agrees with recomputation:", not pop.state.mismatches())


show("grow a at (2,2)", pop.growth((2, 2), a))
show("grow b at (2,4)", pop.growth((2, 4), b))
show("grow a at (2,3); b ignores a, so (2,3) stays in b's zone", pop.growth((2, 3), a))
show("degrow a at (2,3); (2,3) returns to its zone", pop.degrowth((2, 3), a))

sq.select_queue(0)
print("\nqueue stats before draining:", sq.stats(0))
live = []
while (c := sq.pop_valid(pop)) is not None:
    live.append((grid.unravel(c.pixel), c.region))
print("still valid couples:", len(live))
print("stats after draining:", sq.stats(0))
