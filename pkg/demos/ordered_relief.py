"""Flood a small synthetic relief from two basins, lowest gray level first."""
import numpy as np

from srgpa import Neighborhood
from srgpa.algorithms import geodesic_dilation, ordered_growing
from srgpa.oracles import priority_flood_labels

rng = np.random.default_rng(4)
yy, xx = np.mgrid[0:24, 0:40]
# two valleys separated by a ridge at column 28, well off the midpoint 22
relief = np.where(xx < 28, np.abs(xx - 10) * 3, np.abs(xx - 34) * 9) + rng.integers(0, 3, size=xx.shape)
relief = relief.astype(int)
seeds = [[(12, 10)], [(12, 34)]]

flooded = ordered_growing(relief, seeds, Neighborhood.connectivity(4), n_levels=int(relief.max()) + 1)
plain = geodesic_dilation(np.ones_like(relief), seeds, Neighborhood.connectivity(4))

for name, lab in (("gray-level order", flooded), ("distance order", plain)):
    cols = [int(np.argmax(row == 2)) for row in lab]
    print(f"{name:>17}: boundary column per row {min(cols)}..{max(cols)}")

print("gray-level order follows the ridge; distance order splits halfway between the seeds")
print("equals heap-based flood:", np.array_equal(
    flooded, priority_flood_labels(relief, seeds, Neighborhood.connectivity(4).offsets)))
