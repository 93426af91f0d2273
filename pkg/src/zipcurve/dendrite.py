"""The five-map dendrite that is not the attractor of any zipper.

Maps: ``S_1 = x/4``, ``S_2 = x/2 + (1, 0)``, ``S_3 = x/4 + (3, 0)``,
``S_4 = x/4 + (1, sqrt 3)``, ``S_5 = x/4 + (3/2, 3 sqrt 3 / 2)``.  With the
triangle ``A = (0, 0)``, ``B = (2, 2 sqrt 3)``, ``C = (4, 0)`` and
``D = (2, 0)``, everything below checks the computable facts about the
attractor ``K``: touch points of the first-level copies, the tree structure
of the cell graphs, horizontal segments, and cut points.

With translation ``(2, 0)`` for ``S_2`` instead, ``K_1`` is disjoint from
``K_2`` and every touch identity fails.  Pass ``literal_s2=True`` to build
that variant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .attractor import (IFS, attractor_seed_cloud, cell_adjacency_graph, components_after_removal,
                        touch_vertex_counts, word_maps)
from .geom import apply_map, fixed_point, scaling

H = math.sqrt(3.0) / 2
A = np.array([0.0, 0.0])
B = np.array([2.0, 4 * H])
C = np.array([4.0, 0.0])
D = np.array([2.0, 0.0])
TRIANGLE = np.stack([A, B, C])


def main_example_ifs(literal_s2: bool = False) -> IFS:
    s2 = (2.0, 0.0) if literal_s2 else (1.0, 0.0)
    return IFS((
        scaling(0.25),
        scaling(0.5, s2),
        scaling(0.25, (3.0, 0.0)),
        scaling(0.25, (1.0, 2 * H)),
        scaling(0.25, (1.5, 3 * H)),
    ))


@dataclass
class Check:
    name: str
    expected: object
    observed: object
    passed: bool

    def row(self) -> str:
        return f"{self.name}\t{_fmt(self.expected)}\t{_fmt(self.observed)}\t{self.passed}"


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, np.ndarray):
        return "(" + ",".join(f"{x:.6g}" for x in v) + ")"
    if isinstance(v, (set, frozenset)):
        return "{" + ",".join(_fmt(x) for x in sorted(v)) + "}"
    return str(v)


# (label of left point, map, label of right point, map, expected point)
TOUCH_IDENTITIES = (
    ("C_1=A_2", (C, 1), (A, 2), (1.0, 0.0)),
    ("C_2=A_3", (C, 2), (A, 3), (3.0, 0.0)),
    ("B_2=C_4", (B, 2), (C, 4), (2.0, 2 * H)),
    ("B_4=A_5", (B, 4), (A, 5), (1.5, 3 * H)),
)


@dataclass
class Landmarks:
    A: np.ndarray = field(default_factory=lambda: A.copy())
    B: np.ndarray = field(default_factory=lambda: B.copy())
    C: np.ndarray = field(default_factory=lambda: C.copy())
    D: np.ndarray = field(default_factory=lambda: D.copy())

    @property
    def triangle(self) -> np.ndarray:
        return np.stack([self.A, self.B, self.C])

    @property
    def touch_identities(self) -> list[tuple[str, np.ndarray]]:
        return [(name, np.array(p)) for name, _, _, p in TOUCH_IDENTITIES]


def verify_touch_identities(tol: float = 1e-12, ifs: IFS | None = None) -> list[Check]:
    """Coordinates of the four first-level touch points and ``S_2(D) = D``."""
    ifs = main_example_ifs() if ifs is None else ifs
    out = []
    for name, (p, i), (q, j), want in TOUCH_IDENTITIES:
        want = np.array(want)
        a = apply_map(ifs.maps[i - 1], p)
        b = apply_map(ifs.maps[j - 1], q)
        res = max(np.hypot(*(a - want)), np.hypot(*(b - want)))
        out.append(Check(f"touch {name}", want, a, bool(res <= tol)))
    d2 = apply_map(ifs.maps[1], D)
    out.append(Check("touch S_2(D)=D", D, d2, bool(np.hypot(*(d2 - D)) <= tol)))
    return out


def landmark_fixed_points(ifs: IFS | None = None) -> dict[str, np.ndarray]:
    ifs = main_example_ifs() if ifs is None else ifs
    return {f"S_{k}": fixed_point(ifs.maps[k - 1]) for k in range(1, ifs.m + 1)}


def check_fixed_points(tol: float = 1e-12) -> list[Check]:
    fps = landmark_fixed_points()
    out = []
    for k, (label, want) in {1: ("A", A), 2: ("D", D), 3: ("C", C), 5: ("B", B)}.items():
        got = fps[f"S_{k}"]
        out.append(Check(f"fixed point S_{k}={label}", want, got, bool(np.hypot(*(got - want)) <= tol)))
    return out


def _in_triangle(pts: np.ndarray, tri: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    a, b, c = tri
    def side(p, q):
        return (q[0] - p[0]) * (pts[:, 1] - p[1]) - (q[1] - p[1]) * (pts[:, 0] - p[0])
    s1, s2, s3 = side(a, b), side(b, c), side(c, a)
    return ((s1 >= -tol) & (s2 >= -tol) & (s3 >= -tol)) | ((s1 <= tol) & (s2 <= tol) & (s3 <= tol))


def cell_triangles(depth: int, ifs: IFS | None = None) -> np.ndarray:
    """Corners of ``S_w(triangle ABC)`` for every word of the given depth, (n, 3, 2)."""
    ifs = main_example_ifs() if ifs is None else ifs
    lin, tr = word_maps(ifs, depth)
    return np.einsum("wab,kb->wka", lin, TRIANGLE) + tr[:, None, :]


def trapping_check(depth: int) -> Check:
    corners = cell_triangles(depth).reshape(-1, 2)
    inside = bool(_in_triangle(corners, TRIANGLE).all())
    return Check(f"trapping depth {depth}", True, inside, inside)


@dataclass
class Segment:
    start: np.ndarray
    end: np.ndarray
    length: float
    level: int | None  # k with length = 4**(1 - k), or None

    @property
    def horizontal(self) -> bool:
        return abs(self.end[1] - self.start[1]) <= 1e-9 * max(1.0, self.length)


@dataclass
class SegmentReport:
    depth: int
    segments: list[Segment]
    tol: float

    @property
    def lengths(self) -> list[float]:
        return sorted({round(s.length, 9) for s in self.segments}, reverse=True)

    @property
    def all_horizontal(self) -> bool:
        return all(s.horizontal for s in self.segments)

    @property
    def power_of_four_law(self) -> bool:
        """Every maximal chain has length ``4**(1-k)`` with ``0 <= k <= depth``."""
        return all(s.level is not None for s in self.segments)


def _power_of_four_level(length: float, depth: int, tol: float) -> int | None:
    for k in range(depth + 1):
        if abs(length - 4.0 ** (1 - k)) <= tol * 4.0 ** (1 - k):
            return k
    return None


def max_horizontal_segments(depth: int, tol: float = 1e-9, ifs: IFS | None = None) -> SegmentReport:
    """Maximal chains of collinear, touching cell bases ``S_w([A, C])``.

    Bases are grouped by the line they span and merged wherever consecutive
    intervals overlap or share an endpoint (within ``tol``).
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    ifs = main_example_ifs() if ifs is None else ifs
    lin, tr = word_maps(ifs, depth)
    p = lin @ A + tr
    q = lin @ C + tr
    v = q - p
    ang = np.mod(np.arctan2(v[:, 1], v[:, 0]), math.pi)
    u = np.column_stack([np.cos(ang), np.sin(ang)])
    normal_off = p[:, 0] * -u[:, 1] + p[:, 1] * u[:, 0]
    s0 = np.einsum("na,na->n", p, u)
    s1 = np.einsum("na,na->n", q, u)
    lo, hi = np.minimum(s0, s1), np.maximum(s0, s1)
    key = np.round(np.column_stack([ang, normal_off]) / tol).astype(np.int64)
    segments = []
    for k in np.unique(key, axis=0):
        sel = np.flatnonzero((key == k).all(axis=1))
        order = sel[np.argsort(lo[sel], kind="stable")]
        direction = u[order[0]]
        off = normal_off[order[0]]
        normal = np.array([-direction[1], direction[0]])
        cur_lo, cur_hi = lo[order[0]], hi[order[0]]
        for idx in order[1:]:
            if lo[idx] <= cur_hi + tol:
                cur_hi = max(cur_hi, hi[idx])
                continue
            segments.append(_segment(cur_lo, cur_hi, direction, normal, off, depth, tol))
            cur_lo, cur_hi = lo[idx], hi[idx]
        segments.append(_segment(cur_lo, cur_hi, direction, normal, off, depth, tol))
    segments.sort(key=lambda s: (-s.length, s.start[1], s.start[0]))
    return SegmentReport(depth, segments, tol)


def _segment(lo, hi, direction, normal, off, depth, tol) -> Segment:
    start = lo * direction + off * normal
    end = hi * direction + off * normal
    length = float(hi - lo)
    return Segment(start, end, length, _power_of_four_level(length, depth, tol))


def true_segment_lengths(depth: int) -> list[float]:
    """Lengths ``4 r_v`` of the bases ``S_v([A, C])`` that cannot be extended:
    ``v`` is empty or ends in 4 or 5, and ``|v| <= depth``."""
    ratios = {1: 0.25, 2: 0.5, 3: 0.25, 4: 0.25, 5: 0.25}
    out = {4.0}
    level = {(): 1.0}
    for _ in range(depth):
        nxt = {}
        for w, r in level.items():
            for j, rj in ratios.items():
                nxt[w + (j,)] = r * rj
                if j in (4, 5):
                    out.add(4 * r * rj)
        level = nxt
    return sorted({round(x, 9) for x in out}, reverse=True)


def main_example_graph(depth: int, ifs: IFS | None = None, extra_depth: int = 2):
    ifs = main_example_ifs() if ifs is None else ifs
    return cell_adjacency_graph(ifs, depth, seed_cloud=attractor_seed_cloud(ifs, extra_depth))


@dataclass
class TreeLevel:
    depth: int
    nodes: int
    edges: int
    connected: bool
    acyclic: bool

    @property
    def is_tree(self) -> bool:
        return self.connected and self.acyclic


def tree_check(depth: int, ifs: IFS | None = None) -> list[TreeLevel]:
    """Connectivity and acyclicity (after merging cells at shared touch points)
    of the cell graph at every level up to ``depth``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    out = []
    for n in range(1, depth + 1):
        g = main_example_graph(n, ifs)
        v, e, c = touch_vertex_counts(g)
        out.append(TreeLevel(n, g.n_nodes, g.n_edges, g.is_connected(), v - e == c))
    return out


CUT_POINTS = (
    ("C_1", (1.0, 0.0), 2),
    ("C_2", (3.0, 0.0), 2),
    ("B_2", (2.0, 2 * H), 2),
    ("B_4", (1.5, 3 * H), 2),
    ("D", (2.0, 0.0), 3),
    ("A", (0.0, 0.0), 1),
    ("B", (2.0, 4 * H), 1),
    ("C", (4.0, 0.0), 1),
)


def cut_point_suite(depth: int = 3, radius: float | None = None) -> list[Check]:
    """Components of the depth-``depth`` cell graph after deleting the cells at
    each landmark: two for the touch points, three for ``D``, one for the
    end points ``A``, ``B``, ``C``."""
    if depth < 2:
        raise ValueError("depth must be >= 2")
    g = main_example_graph(depth)
    out = []
    for name, p, want in CUT_POINTS:
        got = components_after_removal(g, p, radius)
        out.append(Check(f"cut {name} depth {depth}", want, got, got == want))
    return out


LEVEL1_EDGES = {((1,), (2,)), ((2,), (3,)), ((2,), (4,)), ((4,), (5,))}


def verify(depth: int = 3) -> list[Check]:
    """Every check, one record each."""
    checks = verify_touch_identities()
    checks += check_fixed_points()
    g1 = main_example_graph(1)
    edges = g1.edge_words()
    checks.append(Check("level-1 edges", {(a[0], b[0]) for a, b in LEVEL1_EDGES},
                        {(a[0], b[0]) for a, b in edges}, edges == LEVEL1_EDGES))
    for lvl in tree_check(max(depth, 1)):
        ok = lvl.is_tree and lvl.edges == lvl.nodes - 1
        checks.append(Check(f"tree depth {lvl.depth}", f"{lvl.nodes - 1} edges, acyclic",
                            f"{lvl.edges} edges, {'acyclic' if lvl.acyclic else 'cyclic'}", ok))
    checks.append(trapping_check(max(depth, 1)))
    if depth >= 2:
        checks += cut_point_suite(depth)
    for n in range(1, depth + 1):
        rep = max_horizontal_segments(n)
        want = [round(4.0 ** (1 - k), 9) for k in range(n + 1)]
        checks.append(Check(f"segments horizontal depth {n}", True, rep.all_horizontal,
                            rep.all_horizontal))
        checks.append(Check(f"segment lengths 4^(1-k) depth {n}", want, rep.lengths,
                            rep.lengths == want))
    literal = main_example_graph(1, main_example_ifs(literal_s2=True))
    nc = literal.n_components()
    checks.append(Check("literal S_2 disconnects", ">=2", nc, nc >= 2))
    return checks
