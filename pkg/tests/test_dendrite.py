import math

import numpy as np
import pytest

from zipcurve.attractor import IFS, touch_vertex_counts
from zipcurve.dendrite import (A, B, C, D, LEVEL1_EDGES, Landmarks, cell_triangles,
                               check_fixed_points, cut_point_suite, main_example_graph,
                               main_example_ifs, max_horizontal_segments, trapping_check,
                               tree_check, true_segment_lengths, verify, verify_touch_identities)
from zipcurve.geom import scaling

H = math.sqrt(3) / 2


def test_landmarks():
    lm = Landmarks()
    np.testing.assert_array_equal(lm.triangle, [(0, 0), (2, 4 * H), (4, 0)])
    assert [n for n, _ in lm.touch_identities] == ["C_1=A_2", "C_2=A_3", "B_2=C_4", "B_4=A_5"]


def test_ratios():
    assert main_example_ifs().ratios.tolist() == [0.25, 0.5, 0.25, 0.25, 0.25]


def test_fixed_points_are_landmarks():
    assert all(c.passed for c in check_fixed_points())
    fps = main_example_ifs().fixed_points()
    for want in (A, D, C, B):
        assert np.min(np.hypot(*(fps - want).T)) < 1e-12


def test_touch_identities_exact():
    checks = verify_touch_identities(tol=0.0)
    assert len(checks) == 5
    assert all(c.passed for c in checks)


def test_touch_identities_fail_for_literal_translation():
    checks = verify_touch_identities(ifs=main_example_ifs(literal_s2=True))
    assert not checks[0].passed


def test_trapping_up_to_depth_five():
    for n in range(1, 6):
        assert trapping_check(n).passed
    assert cell_triangles(2).shape == (25, 3, 2)


def test_level1_graph():
    assert main_example_graph(1).edge_words() == LEVEL1_EDGES


def test_tree_check_depths_one_to_three():
    for lvl in tree_check(3):
        assert (lvl.nodes, lvl.edges) == (5 ** lvl.depth, 5 ** lvl.depth - 1)
        assert lvl.is_tree


def test_tree_check_negative_control():
    f = main_example_ifs().maps
    # S_3's copy moved onto the middle of S_2's base: the two copies overlap
    moved = IFS((f[0], f[1], scaling(0.25, (1.5, 0)), f[3], f[4]))
    assert not tree_check(1, moved)[0].acyclic


def test_literal_s2_disconnects():
    g = main_example_graph(1, main_example_ifs(literal_s2=True))
    assert g.n_components() >= 2


def test_cut_points_depth_three():
    checks = cut_point_suite(3)
    assert [c.observed for c in checks] == [2, 2, 2, 2, 3, 1, 1, 1]
    assert all(c.passed for c in checks)


def test_cut_points_need_depth_two():
    with pytest.raises(ValueError):
        cut_point_suite(1)


def test_incidence_counts_depth_two():
    v, e, c = touch_vertex_counts(main_example_graph(2))
    assert v - e == c == 1


def test_segments_depth_one():
    rep = max_horizontal_segments(1)
    assert rep.all_horizontal
    assert rep.lengths == [4.0, 1.0]
    starts = {(round(s.start[0], 12), round(s.start[1], 12), round(s.length, 12)) for s in rep.segments}
    assert (0.0, 0.0, 4.0) in starts
    assert (1.0, round(2 * H, 12), 1.0) in starts


@pytest.mark.parametrize("depth", [1, 2, 3, 4])
def test_segment_detector_matches_enumeration(depth):
    rep = max_horizontal_segments(depth)
    assert rep.all_horizontal
    assert rep.lengths == true_segment_lengths(depth)


def test_segment_report_half_length_base_at_depth_two():
    # S_2 o S_4 scales [A, C] by 1/8: a maximal chain of length 1/2
    assert 0.5 in max_horizontal_segments(2).lengths


def test_verify_rows_are_tab_separated():
    checks = verify(2)
    assert all(len(c.row().split("\t")) == 4 for c in checks)
    names = [c.name for c in checks]
    assert "level-1 edges" in names and "literal S_2 disconnects" in names
