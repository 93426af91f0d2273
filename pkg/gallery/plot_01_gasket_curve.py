"""
A curve through the Sierpinski gasket
=====================================

Three similarities of ratio 1/2 glued end to end along the chain
(0,0) -> (1/4, h) -> (3/4, h) -> (1,0) form a zipper whose attractor is the
gasket. Its parametrization is approximated by polygons at increasing levels.
"""
from pathlib import Path

import zipcurve as zc

out = Path(__file__).with_name("_output")
out.mkdir(exist_ok=True)

entry = zc.get_example("gasket")
zipper, partition = entry.zipper(), entry.partition_obj()

# every map sends the ends of the chain to neighbouring chain vertices
report = zc.validate_zipper(zipper)
print("zipper conditions hold:", report.passed, "max residual", report.max_residual)

# level k has 3^(k+1) + 1 vertices
for level in (1, 2, 4, 8):
    poly = zc.curve_polyline(zipper, partition, level)
    zc.render_svg(zc.curve_drawing([poly]), out / f"gasket_level{level}.svg")
    print(f"level {level}: {len(poly)} vertices")

# several levels stacked in one picture
polys = [zc.curve_polyline(zipper, partition, k) for k in range(4)]
zc.render_svg(zc.curve_drawing(polys), out / "gasket_levels_0_3.svg")
