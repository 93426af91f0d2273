"""
Choosing orientations
=====================

Two endpoint constraints fix a similarity up to a mirror image. Trying every
direct/mirror choice and comparing with a known attractor picks the right one.
"""
import zipcurve as zc
from zipcurve.catalog import filled_square_sample, gasket_reference, resolve_reflections

gasket = zc.get_example("gasket")
res = resolve_reflections(gasket.vertices, gasket.signature, gasket_reference(), sample_budget=5000)
print("gasket:", res.flags, f"distance {res.distance:.4f}")

square = zc.get_example("square")
res = resolve_reflections(square.vertices, square.signature, filled_square_sample(65),
                          sample_budget=5000)
for flags, d in sorted(res.distances.items(), key=lambda kv: kv[1])[:4]:
    print("square:", tuple(int(f) for f in flags), f"{d:.4f}")

# the carpet entry overlaps one cell; compare with the carpet and with the full square
carpet = zc.get_example("carpet")
print("carpet vs carpet:", round(zc.catalog.reference_distance(carpet), 4))
print("carpet vs square:", round(zc.catalog.reference_distance(carpet, filled_square_sample(65)), 4))
