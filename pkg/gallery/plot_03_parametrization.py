"""
Digits, conjugacy and Hölder exponents
======================================

A parameter t is expanded in the signed digit system of the partition:
each digit picks an interval, reversed intervals flip the remainder.
The same digits, read as plane maps, locate gamma(t).
"""
import numpy as np

import zipcurve as zc

entry = zc.get_example("gasket")
zipper, partition = entry.zipper(), entry.partition_obj()

ex = zc.digit_expansion(0.3, partition, zipper.signature, 12)
print("digits of 0.3:", ex.digits, "remainder", ex.residual_t)
print("reconstructed:", zc.reconstruct(ex, partition, zipper.signature))

# S_i(gamma(t)) = gamma(T_i(t)) up to truncation
for name in zc.list_examples():
    e = zc.get_example(name)
    r = zc.conjugacy_residual(e.zipper(), e.partition_obj())
    print(f"{name:16s} conjugacy residual {r:.1e}")

# m maps of ratio r on equal subintervals give exponent log(1/r) / log(m):
# 1 for the segment, log 2 / log 3 for the gasket, 1/2 for the square
for name in ("interval", "gasket", "square"):
    e = zc.get_example(name)
    est = zc.estimate_holder(e.zipper(), e.partition_obj(), n_pairs=10**5, rng_seed=1)
    print(f"{name:10s} exponent {est.exponent:.3f}")
print("log 2 / log 3 =", round(np.log(2) / np.log(3), 3))
