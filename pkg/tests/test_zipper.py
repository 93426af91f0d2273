import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zipcurve.geom import apply_map
from zipcurve.zipper import (Partition, Zipper, build_planar_zipper, standard_interval_zipper,
                             validate_zipper)

S3 = math.sqrt(3)
GASKET = [(0, 0), (0.25, S3 / 4), (0.75, S3 / 4), (1, 0)]
SQUARE = [(0, 0), (0, 0.5), (0.5, 0.5), (1, 0.5), (1, 0)]
DENDRITE = [(0, 0), (1, 0), (1, 1), (1, 2), (2, 2), (2, 1), (2, 0), (3, 0)]


def test_interval_zipper_uniform_direct():
    t1, t2 = standard_interval_zipper(Partition.uniform(2), (0, 0))
    assert (t1.start, t1.end) == (0.0, 0.5)
    assert (t2.start, t2.end) == (0.5, 1.0)


def test_interval_zipper_reversing_first_map():
    t1, _ = standard_interval_zipper(Partition.uniform(2), (1, 0))
    assert t1(0.0) == 0.5 and t1(1.0) == 0.0
    assert t1.slope < 0


def test_interval_zipper_third_map_by_hand():
    p = Partition((0, 1 / 3, 2 / 3, 1))
    t3 = standard_interval_zipper(p, (1, 0, 1))[2]
    for t in (0.0, 0.3, 1.0):
        assert t3(t) == pytest.approx(1 - t / 3, abs=1e-15)


def test_interval_zipper_length_mismatch():
    with pytest.raises(ValueError):
        standard_interval_zipper(Partition.uniform(3), (0, 1))


@st.composite
def partitions_and_signatures(draw):
    m = draw(st.integers(1, 8))
    widths = draw(st.lists(st.floats(0.05, 1.0), min_size=m, max_size=m))
    eps = draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    return Partition.proportional(widths), eps


@given(partitions_and_signatures())
def test_interval_zipper_endpoint_law(pe):
    p, eps = pe
    x = p.cuts
    for i, (t, e) in enumerate(zip(standard_interval_zipper(p, eps), eps), start=1):
        assert t(0.0) == x[i - 1 + e]
        assert t(1.0) == x[i - e]
        assert (t.slope < 0) == (e == 1)


def test_partition_invariants():
    with pytest.raises(ValueError, match="cut 2"):
        Partition((0, 0.5, 0.5, 1))
    with pytest.raises(ValueError):
        Partition((0.1, 1))
    assert Partition.uniform(4).cuts == (0, 0.25, 0.5, 0.75, 1)


def test_build_gasket_and_square():
    g = build_planar_zipper(GASKET, (1, 0, 1))
    assert g.ratios == pytest.approx([0.5] * 3, abs=1e-15)
    s = build_planar_zipper(SQUARE, (1, 0, 0, 1))
    assert s.ratios == pytest.approx([0.5] * 4, abs=1e-15)


def test_build_rejects_single_map():
    with pytest.raises(ValueError, match="map 1 not contracting"):
        build_planar_zipper([(0, 0), (1, 0)], (0,))


def test_build_rejects_degenerate_map():
    with pytest.raises(ValueError, match="degenerate map 2"):
        build_planar_zipper([(0, 0), (0.5, 0), (0.5, 0), (1, 0)], (0, 0, 0))


def test_validate_passes_on_constructions():
    for verts, eps in ((GASKET, (1, 0, 1)), (SQUARE, (1, 0, 0, 1)), (DENDRITE, (0, 0, 1, 1, 1, 0, 0))):
        rep = validate_zipper(build_planar_zipper(verts, eps), 1e-12)
        assert rep.passed
        assert rep.max_residual < 1e-12


def test_validate_detects_perturbed_vertex():
    z = build_planar_zipper(GASKET, (1, 0, 1))
    verts = np.array(z.vertices)
    verts[1] += (0.01, 0)
    bad = Zipper(z.maps, verts, z.signature)
    rep = validate_zipper(bad, 1e-9)
    assert not rep.passed
    assert rep.max_residual == pytest.approx(0.01, abs=1e-12)


@st.composite
def chains(draw):
    m = draw(st.integers(2, 6))
    eps = draw(st.lists(st.integers(0, 1), min_size=m, max_size=m))
    flags = draw(st.lists(st.booleans(), min_size=m, max_size=m))
    # zig-zag chain from (0, 0) to (1, 0) whose links are all shorter than 1
    ys = draw(st.lists(st.floats(-0.3, 0.3), min_size=m - 1, max_size=m - 1))
    xs = np.linspace(0, 1, m + 1)
    verts = [(0.0, 0.0)] + [(x, y) for x, y in zip(xs[1:-1], ys)] + [(1.0, 0.0)]
    return verts, eps, flags


@given(chains())
def test_build_then_validate_always_passes(c):
    verts, eps, flags = c
    z = build_planar_zipper(verts, eps, flags)
    rep = validate_zipper(z, 1e-12)
    assert rep.passed, rep.failures()
    # chain touch: consecutive images share z_j
    for j in range(1, z.m):
        imgs_j = [apply_map(z.maps[j - 1], z.vertices[k]) for k in (0, -1)]
        imgs_k = [apply_map(z.maps[j], z.vertices[k]) for k in (0, -1)]
        assert min(np.hypot(*(a - z.vertices[j])) for a in imgs_j) < 1e-12
        assert min(np.hypot(*(a - z.vertices[j])) for a in imgs_k) < 1e-12
