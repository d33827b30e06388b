"""Grow three seeds across the lichen island fixture and print the result.

Run from the repository root:  python3 demos/lichen_geodesic.py
"""
from pathlib import Path

import numpy as np

from srgpa import Neighborhood
from srgpa.algorithms import geodesic_dilation
from srgpa.formats import read_pgm, read_seeds
from srgpa.oracles import bfs_geodesic_labels

data = Path(__file__).resolve().parent.parent / "tests" / "data"
island = read_pgm(data / "lichen_island.pgm").pixels
seeds = read_seeds(data / "lichen_seeds.txt", island.shape)
print(f"island {island.shape}, {int((island > 0).sum())} land pixels, {len(seeds)} seeds")

labels = geodesic_dilation(island, seeds, Neighborhood.connectivity(4))

glyph = np.array(list(".abc"))
water = np.where(island > 0, glyph[labels], "~")
water[(island > 0) & (labels == 0)] = "?"   # land no seed could reach
print("\n".join("".join(row) for row in water))

for k in range(len(seeds)):
    print(f"region {k}: {int((labels == k + 1).sum())} pixels")

same = np.array_equal(labels, bfs_geodesic_labels(island, seeds, Neighborhood.connectivity(4).offsets))
print("matches plain BFS:", same)
