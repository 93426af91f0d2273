import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zipcurve.geom import (Similarity2, apply_map, compose, contraction_ratio, fixed_point,
                           from_params, identity, scaling, similarity_from_point_pair)

S3 = math.sqrt(3)

coord = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
points = st.tuples(coord, coord)
sims = st.builds(from_params, st.floats(0.05, 0.95), st.floats(-180, 180), st.booleans(),
                 points)


def test_pair_scaling_identity_case():
    f = similarity_from_point_pair((0, 0), (1, 0), (0, 0), (0.5, 0))
    np.testing.assert_allclose(f((0, 1)), (0, 0.5), atol=1e-15)


def test_pair_mirror_case():
    # hand solution: z -> conj(z) / 2
    f = similarity_from_point_pair((0, 0), (1, 0), (0, 0), (0.5, 0), reflect=True)
    np.testing.assert_allclose(f((0, 1)), (0, -0.5), atol=1e-15)
    assert f.reflects


def test_pair_gasket_first_map_ratio():
    f = similarity_from_point_pair((0, 0), (1, 0), (0.25, S3 / 4), (0, 0))
    assert contraction_ratio(f) == pytest.approx(0.5, abs=1e-15)


def test_pair_rejects_coincident_sources():
    with pytest.raises(ValueError, match="coincident source points"):
        similarity_from_point_pair((1, 1), (1, 1), (0, 0), (1, 0))


@given(points, points, points, points, st.booleans())
def test_pair_hits_targets(p, q, p2, q2, reflect):
    if math.dist(p, q) < 1e-3:
        return
    f = similarity_from_point_pair(p, q, p2, q2, reflect)
    scale = 1 + max(map(abs, p + q + p2 + q2))
    assert np.allclose(f(p), p2, atol=1e-12 * scale ** 2)
    assert np.allclose(f(q), q2, atol=1e-12 * scale ** 2)
    if math.dist(p2, q2) > 1e-3:
        assert f.reflects == reflect
        assert contraction_ratio(f) == pytest.approx(math.dist(p2, q2) / math.dist(p, q), rel=1e-12)


def test_apply_map_examples():
    assert np.array_equal(apply_map(identity(), (3, 4)), [3, 4])
    np.testing.assert_allclose(apply_map(scaling(0.25), (4, 0)), (1, 0))
    s5 = scaling(0.25, (1.5, 3 * S3 / 2))
    np.testing.assert_allclose(apply_map(s5, (0, 0)), (1.5, 3 * S3 / 2))


def test_apply_map_batch_matches_single():
    f = from_params(0.3, 40, True, (1, 2))
    pts = np.random.default_rng(0).normal(size=(7, 2))
    batch = apply_map(f, pts)
    for p, b in zip(pts, batch):
        np.testing.assert_allclose(apply_map(f, p), b, atol=1e-15)


def test_compose_examples():
    f = from_params(0.5, 30, False, (1, 1))
    assert compose(identity(), f).isclose(f, 0)
    assert contraction_ratio(compose(scaling(0.25), scaling(0.25))) == pytest.approx(1 / 16)
    s2, s4 = scaling(0.5, (1, 0)), scaling(0.25, (1, S3))
    np.testing.assert_allclose(compose(s2, s4)((0, 0)), (1.5, S3 / 2), atol=1e-15)


def test_fixed_point_examples():
    np.testing.assert_allclose(fixed_point(scaling(0.25)), (0, 0))
    np.testing.assert_allclose(fixed_point(scaling(0.5, (1, 0))), (2, 0), atol=1e-15)
    np.testing.assert_allclose(fixed_point(scaling(0.25, (1.5, 3 * S3 / 2))), (2, 2 * S3), atol=1e-15)
    with pytest.raises(ValueError, match="not a contraction"):
        fixed_point(identity())


def test_contraction_ratio_examples():
    assert contraction_ratio(identity()) == 1.0
    assert contraction_ratio(scaling(0.25, (7, -2))) == 0.25
    with pytest.raises(ValueError, match="not a similarity"):
        contraction_ratio(Similarity2([[1, 0], [0, 0.5]], (0, 0)))


@given(sims)
def test_fixed_point_is_fixed(f):
    p = fixed_point(f)
    assert np.allclose(f(p), p, atol=1e-12 * (1 + np.abs(p).max()))


@given(sims, sims)
def test_ratio_multiplies(f, g):
    assert contraction_ratio(compose(f, g)) == pytest.approx(
        contraction_ratio(f) * contraction_ratio(g), abs=1e-12)


@given(sims, points)
def test_compose_is_application_order(f, p):
    g = from_params(0.7, 12, True, (0.5, -1))
    assert np.allclose(compose(f, g)(p), f(g(p)), atol=1e-12 * 40)


@given(sims)
def test_round_trip_from_point_pair(f):
    p, q = np.array([0.3, -1.2]), np.array([2.0, 0.7])
    g = similarity_from_point_pair(p, q, f(p), f(q), f.reflects)
    assert g.isclose(f, 1e-12 * 20)


@given(sims, points, points)
def test_distance_scaling(f, u, v):
    d = math.dist(u, v)
    assert math.dist(f(u), f(v)) == pytest.approx(f.ratio * d, rel=1e-12, abs=1e-12)


def test_param_view_round_trip():
    f = from_params(0.4, 123.0, True, (1, 2))
    assert f.reflects
    g = from_params(f.ratio, f.angle_deg, f.reflects, f.translation)
    assert g.isclose(f, 1e-12)


def test_as_point_rejects_nonfinite():
    with pytest.raises(ValueError):
        apply_map(identity(), (float("nan"), 0))
