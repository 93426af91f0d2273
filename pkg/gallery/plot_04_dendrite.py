"""
A dendrite that no zipper traces
================================

Five maps, S_1 = x/4, S_2 = x/2 + (1,0), S_3 = x/4 + (3,0),
S_4 = x/4 + (1, sqrt 3) and S_5 = x/4 + (3/2, 3 sqrt 3 / 2), inside the
triangle A = (0,0), B = (2, 2 sqrt 3), C = (4,0). The copies meet at single
points, the cell graphs are trees, and removing a touch point splits the set.
"""
from pathlib import Path

import zipcurve as zc
from zipcurve import dendrite

out = Path(__file__).with_name("_output")
out.mkdir(exist_ok=True)

ifs = dendrite.main_example_ifs()

for check in dendrite.verify_touch_identities():
    print(check.row())

for lvl in dendrite.tree_check(4):
    print(f"depth {lvl.depth}: {lvl.nodes} cells, {lvl.edges} contacts, tree {lvl.is_tree}")

# D = (2,0) is where three branches meet; A, B and C are ends
for check in dendrite.cut_point_suite(3):
    print(check.row())

# maximal horizontal segments: bases S_v([A, C]) with v ending in 4 or 5
for depth in (1, 2, 3):
    rep = dendrite.max_horizontal_segments(depth)
    print(f"depth {depth}: lengths {rep.lengths}")

# with translation (2,0) for S_2 the first two copies no longer meet
literal = dendrite.main_example_graph(1, dendrite.main_example_ifs(literal_s2=True))
print("components with translation (2,0):", literal.n_components())

cloud = zc.chaos_game(ifs, 50_000, rng_seed=0)
zc.render_svg(zc.cloud_drawing(cloud.points), out / "dendrite.svg")
