"""
Filling the unit square
=======================

Four maps of ratio 1/2 with signature (1, 0, 0, 1) give a curve whose image
is the whole square. The chaos game visits every cell of a fine grid.
"""
from pathlib import Path

import numpy as np

import zipcurve as zc

out = Path(__file__).with_name("_output")
out.mkdir(exist_ok=True)

entry = zc.get_example("square")
zipper, partition = entry.zipper(), entry.partition_obj()
ifs = zipper.ifs()

pts = zc.chaos_game(ifs, 10**6, rng_seed=0).points
cells = np.clip(np.floor(pts * 64).astype(int), 0, 63)
print("64x64 cells visited:", len(np.unique(cells[:, 0] * 64 + cells[:, 1])))

# the polygon at level 5 already looks like a plane-filling curve
poly = zc.curve_polyline(zipper, partition, 5)
zc.render_svg(zc.curve_drawing([poly]), out / "square_level5.svg")

# halfway along the curve we are at the centre
print("gamma(1/2) =", zc.gamma(zipper, partition, 0.5))
