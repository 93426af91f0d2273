"""Attractors of plane IFS: Hutchinson iteration, chaos game, Hausdorff
distance and cell adjacency graphs."""
from __future__ import annotations

import csv
import heapq
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .geom import Similarity2, as_point, compose_chain, contraction_ratio, fixed_point

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True, eq=False)
class IFS:
    """A finite family of contracting similarities."""

    maps: tuple[Similarity2, ...]

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        for j, f in enumerate(maps, start=1):
            if not contraction_ratio(f) < 1.0:
                raise ValueError(f"map {j} is not a contraction")
        object.__setattr__(self, "maps", maps)

    def __len__(self):
        return len(self.maps)

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> np.ndarray:
        return np.array([contraction_ratio(f) for f in self.maps])

    @property
    def r_max(self) -> float:
        return float(self.ratios.max())

    def stacked(self) -> tuple[np.ndarray, np.ndarray]:
        """Linear parts (m, 2, 2) and translations (m, 2)."""
        return (np.stack([f.linear for f in self.maps]),
                np.stack([f.translation for f in self.maps]))

    def fixed_points(self) -> np.ndarray:
        return np.stack([fixed_point(f) for f in self.maps])

    def invariant_ball(self, points=None) -> tuple[np.ndarray, float]:
        """A disk mapped into itself by every map, containing ``points``.

        The attractor and every Hutchinson iterate of ``points`` stay inside it.
        """
        fps = self.fixed_points()
        pts = fps if points is None else np.vstack([fps, np.asarray(points, float).reshape(-1, 2)])
        c = pts.mean(axis=0)
        radius = float(np.max(np.hypot(*(pts - c).T)))
        for f, r in zip(self.maps, self.ratios):
            radius = max(radius, float(np.hypot(*(f.linear @ c + f.translation - c))) / (1.0 - r))
        return c, radius


@dataclass(eq=False)
class PointCloud:
    """Points (n, 2) with optional 1-based addresses (n, depth)."""

    points: np.ndarray
    addresses: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if self.addresses is not None:
            self.addresses = np.asarray(self.addresses, dtype=np.int64)
            if self.addresses.ndim != 2 or self.addresses.shape[0] != len(self.points):
                raise ValueError("addresses must have shape (n_points, depth)")

    def __len__(self):
        return len(self.points)

    @property
    def depth(self) -> int | None:
        return None if self.addresses is None else self.addresses.shape[1]


def as_cloud(a) -> PointCloud:
    return a if isinstance(a, PointCloud) else PointCloud(np.asarray(a, dtype=float).reshape(-1, 2))


def words(m: int, depth: int):
    """All multi-indices of the given depth over ``1..m`` in lexicographic order."""
    return itertools.product(range(1, m + 1), repeat=depth)


def word_map(ifs: IFS, word) -> Similarity2:
    """``S_{i_1} o ... o S_{i_k}``."""
    return compose_chain(ifs.maps[i - 1] for i in word)


def word_maps(ifs: IFS, depth: int, budget: int = DEFAULT_BUDGET):
    """Linear parts and translations of all depth-``depth`` compositions.

    Row ``k`` corresponds to the ``k``-th word of :func:`words`.
    """
    m = ifs.m
    if m ** depth > budget:
        raise ValueError("depth budget exceeded")
    lin_j, tr_j = ifs.stacked()
    lin = np.eye(2)[None]
    tr = np.zeros((1, 2))
    for _ in range(depth):
        new_tr = (np.einsum("wab,jb->wja", lin, tr_j) + tr[:, None, :]).reshape(-1, 2)
        lin = np.einsum("wab,jbc->wjac", lin, lin_j).reshape(-1, 2, 2)
        tr = new_tr
    return lin, tr



def word_array(m: int, depth: int) -> np.ndarray:
    """All words of :func:`words` as an int array (m**depth, depth)."""
    if depth == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((m,) * depth).reshape(depth, -1).T
    return grids.astype(np.int64) + 1


def _push(lin, tr, pts) -> np.ndarray:
    """Apply each of ``len(lin)`` maps to all of ``pts``; word-major (n_maps * n_pts, 2)."""
    return (np.einsum("wab,pb->wpa", lin, pts) + tr[:, None, :]).reshape(-1, 2)


def hutchinson_step(ifs: IFS, cloud) -> PointCloud:
    """``T(A) = union of S_j(A)``; addresses get the map index prefixed."""
    cloud = as_cloud(cloud)
    n = len(cloud)
    if n == 0:
        return PointCloud(np.zeros((0, 2)),
                          None if cloud.addresses is None else np.zeros((0, cloud.depth + 1), np.int64))
    lin, tr = ifs.stacked()
    pts = _push(lin, tr, cloud.points)
    addr = None
    if cloud.addresses is not None:
        prefix = np.repeat(np.arange(1, ifs.m + 1), n)[:, None]
        addr = np.hstack([prefix, np.tile(cloud.addresses, (ifs.m, 1))])
    return PointCloud(pts, addr)


def iterate_addresses(ifs: IFS, depth: int, seed=(0.0, 0.0), budget: int = DEFAULT_BUDGET) -> PointCloud:
    """``{S_w(seed) : |w| = depth}`` with addresses, in lexicographic order."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if ifs.m ** depth > budget:
        raise ValueError("depth budget exceeded")
    lin, tr = word_maps(ifs, depth, budget)
    pts = lin @ as_point(seed) + tr
    return PointCloud(pts, word_array(ifs.m, depth))


def iterate_cloud(ifs: IFS, cloud, n: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Points of ``T^n(cloud)`` without addresses."""
    pts = as_cloud(cloud).points
    if ifs.m ** n * len(pts) > budget:
        raise ValueError("depth budget exceeded")
    lin, tr = word_maps(ifs, n, budget)
    return _push(lin, tr, pts)


def chaos_game(ifs: IFS, n: int, rng_seed: int = 0, burn_in: int = 40, start=(0.0, 0.0)) -> PointCloud:
    """Random iteration with uniformly chosen maps.

    One RNG stream draws ``burn_in + n`` map indices; point ``k`` is
    ``S_{c_k} o ... o S_{c_1}(start)``.  The orbit is evaluated with a
    parallel prefix composition, so results are deterministic but may differ
    in the last bits from a naive sequential loop.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(rng_seed)
    choice = rng.integers(0, ifs.m, size=burn_in + n)
    lin_j, tr_j = ifs.stacked()
    a, b = lin_j[choice, 0, 0].copy(), lin_j[choice, 0, 1].copy()
    c, d = lin_j[choice, 1, 0].copy(), lin_j[choice, 1, 1].copy()
    tx, ty = tr_j[choice, 0].copy(), tr_j[choice, 1].copy()
    off = 1
    total = len(choice)
    while off < total:
        # P_i <- P_i o P_{i-off}
        a2, b2, c2, d2 = a[:-off], b[:-off], c[:-off], d[:-off]
        x2, y2 = tx[:-off], ty[:-off]
        a1, b1, c1, d1 = a[off:], b[off:], c[off:], d[off:]
        x1, y1 = tx[off:], ty[off:]
        na, nb = a1 * a2 + b1 * c2, a1 * b2 + b1 * d2
        nc, nd = c1 * a2 + d1 * c2, c1 * b2 + d1 * d2
        nx, ny = a1 * x2 + b1 * y2 + x1, c1 * x2 + d1 * y2 + y1
        a[off:], b[off:], c[off:], d[off:] = na, nb, nc, nd
        tx[off:], ty[off:] = nx, ny
        off *= 2
    s = as_point(start)
    xs = a * s[0] + b * s[1] + tx
    ys = c * s[0] + d * s[1] + ty
    return PointCloud(np.column_stack([xs[burn_in:], ys[burn_in:]]))


def _pair_dist(p, q):
    dx = p[..., 0] - q[..., 0]
    dy = p[..., 1] - q[..., 1]
    return np.sqrt(dx * dx + dy * dy)


def directed_bruteforce(a: np.ndarray, b: np.ndarray, chunk: int = 2048) -> float:
    best = 0.0
    for i in range(0, len(a), chunk):
        blk = a[i:i + chunk]
        d = _pair_dist(blk[:, None, :], b[None, :, :])
        best = max(best, float(d.min(axis=1).max()))
    return best


def hausdorff_distance_bruteforce(a, b) -> float:
    """Reference O(|A| |B|) Hausdorff distance."""
    a, b = as_cloud(a).points, as_cloud(b).points
    if len(a) == 0 or len(b) == 0:
        raise ValueError("Hausdorff distance of an empty cloud")
    return max(directed_bruteforce(a, b), directed_bruteforce(b, a))


def nearest_distances(a: np.ndarray, b: np.ndarray, tree: cKDTree | None = None) -> np.ndarray:
    """Distance from each point of ``a`` to its nearest neighbour in ``b``.

    The KD-tree only picks the neighbour; the distance is recomputed with the
    brute-force formula so both routes agree bitwise.
    """
    tree = cKDTree(b) if tree is None else tree
    _, idx = tree.query(a)
    return _pair_dist(a, b[idx])


def directed_hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    if len(a) == 0:
        return 0.0
    return float(nearest_distances(a, b).max())


def hausdorff_distance(a, b) -> float:
    """``max(sup_a inf_b |a-b|, sup_b inf_a |a-b|)`` over two finite clouds."""
    a, b = as_cloud(a).points, as_cloud(b).points
    if len(a) == 0 or len(b) == 0:
        raise ValueError("Hausdorff distance of an empty cloud")
    return max(directed_hausdorff(a, b), directed_hausdorff(b, a))


def _directed_iterates(ifs: IFS, p: np.ndarray, q: np.ndarray, n: int) -> float:
    """``sup_{x in T^n P} d(x, T^n Q)`` without materializing either set.

    A point ``S_w(p)`` is within ``r_w d(p, Q)`` of its own cell's copy of
    ``Q``, which bounds every cell; a best-first search over words visits only
    cells whose bound can still beat the running maximum, and exact
    neighbour searches only look at cells whose bounding disks are in reach.
    """
    if len(p) == 0:
        return 0.0
    own = nearest_distances(p, q)
    h0 = float(own.max())
    if h0 == 0.0:
        return 0.0
    lin_j, tr_j = ifs.stacked()
    ratios = ifs.ratios
    r_max = float(ratios.max())
    centre, radius = ifs.invariant_ball(np.vstack([p, q]))
    best = 0.0
    counter = itertools.count()
    heap = [(-h0 * r_max ** n, next(counter), 0, 1.0, np.eye(2), np.zeros(2))]
    while heap:
        neg, _, k, r, lin, tr = heapq.heappop(heap)
        if -neg <= best:
            break
        if k < n:
            for j in range(ifs.m):
                r2 = r * ratios[j]
                bound = h0 * r2 * r_max ** (n - k - 1)
                if bound > best:
                    heapq.heappush(heap, (-bound, next(counter), k + 1, r2,
                                          lin @ lin_j[j], lin @ tr_j[j] + tr))
            continue
        live = r * own > best
        if not np.any(live):
            continue
        xs = p[live] @ lin.T + tr
        u = r * own[live]
        reach = float(u.max())
        cell_c = lin @ centre + tr
        cand = _cells_near(lin_j, tr_j, ratios, centre, radius, n, cell_c, r * radius + reach)
        qs = _push(cand[0], cand[1], q)
        d = np.minimum(u, nearest_distances(xs, qs))
        best = max(best, float(d.max()))
    return best


def _cells_near(lin_j, tr_j, ratios, centre, radius, n, point, reach):
    """Maps of all depth-``n`` cells whose bounding disk comes within ``reach`` of ``point``."""
    lin = np.eye(2)[None]
    tr = np.zeros((1, 2))
    r = np.ones(1)
    m = len(ratios)
    for _ in range(n):
        tr = (np.einsum("wab,jb->wja", lin, tr_j) + tr[:, None, :]).reshape(-1, 2)
        lin = np.einsum("wab,jbc->wjac", lin, lin_j).reshape(-1, 2, 2)
        r = (r[:, None] * ratios[None, :]).reshape(-1)
        c = lin @ centre + tr
        keep = np.hypot(*(c - point).T) <= r * radius + reach
        lin, tr, r = lin[keep], tr[keep], r[keep]
    return lin, tr


def hutchinson_gap(ifs: IFS, cloud, n: int) -> float:
    """Exact ``d_H(T^n A, T^{n+1} A)`` for a finite cloud ``A``."""
    a = as_cloud(cloud).points
    if len(a) == 0:
        raise ValueError("Hausdorff distance of an empty cloud")
    ta = hutchinson_step(ifs, a).points
    return max(_directed_iterates(ifs, a, ta, n), _directed_iterates(ifs, ta, a, n))


def attractor_seed_cloud(ifs: IFS, extra_depth: int = 2, extra_points=()) -> np.ndarray:
    """Points of the attractor: images of all fixed points (and of
    ``extra_points``, which must lie on the attractor) under depth
    ``extra_depth`` words, with near-duplicates removed."""
    seeds = [ifs.fixed_points()]
    if len(extra_points):
        seeds.append(np.asarray(extra_points, dtype=float).reshape(-1, 2))
    pts = iterate_cloud(ifs, np.vstack(seeds), extra_depth)
    scale = max(1.0, float(np.ptp(pts, axis=0).max()))
    _, keep = np.unique(np.round(pts / (scale * 1e-12)), axis=0, return_index=True)
    return pts[np.sort(keep)]


def default_touch_tol(seed_cloud: np.ndarray) -> float:
    return 1e-6 * max(1.0, float(np.ptp(seed_cloud, axis=0).max()))


@dataclass(eq=False)
class CellGraph:
    """Adjacency of depth-``depth`` cells ``S_w(K)``.

    ``points``/``labels`` hold the pushed-forward seed cloud of every cell;
    ``contacts`` lists ``(i, j, x, y)`` for every close pair of points from
    different cells, which is what :func:`touch_vertex_counts` clusters.
    """

    depth: int
    nodes: list[tuple[int, ...]]
    edges: set[tuple[int, int]]
    points: np.ndarray
    labels: np.ndarray
    touch_tol: float
    contacts: np.ndarray = field(default_factory=lambda: np.zeros((0, 4)))

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_words(self) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
        return {(self.nodes[i], self.nodes[j]) for i, j in self.edges}

    def n_components(self, keep: np.ndarray | None = None) -> int:
        keep = np.ones(self.n_nodes, bool) if keep is None else keep
        return _count_components(self.n_nodes, self.edges, keep)

    def is_connected(self) -> bool:
        return self.n_components() == 1


def _count_components(n: int, edges, keep: np.ndarray) -> int:
    idx = np.flatnonzero(keep)
    if len(idx) == 0:
        return 0
    remap = -np.ones(n, dtype=np.int64)
    remap[idx] = np.arange(len(idx))
    e = np.array([(i, j) for i, j in edges if keep[i] and keep[j]], dtype=np.int64).reshape(-1, 2)
    g = coo_matrix((np.ones(len(e)), (remap[e[:, 0]], remap[e[:, 1]])), shape=(len(idx), len(idx)))
    return int(connected_components(g, directed=False)[0])


def cell_adjacency_graph(ifs: IFS, depth: int, touch_tol: float | None = None,
                         seed_cloud=None, budget: int = DEFAULT_BUDGET) -> CellGraph:
    """Cells ``i`` and ``j`` are adjacent when their point sets come within ``touch_tol``."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    seed = attractor_seed_cloud(ifs) if seed_cloud is None else as_cloud(seed_cloud).points
    if ifs.m ** depth * len(seed) > budget:
        raise ValueError("depth budget exceeded")
    tol = default_touch_tol(seed) if touch_tol is None else float(touch_tol)
    lin, tr = word_maps(ifs, depth, budget)
    pts = _push(lin, tr, seed)
    labels = np.repeat(np.arange(len(lin)), len(seed))
    pairs = cKDTree(pts).query_pairs(tol, output_type="ndarray")
    cross = pairs[labels[pairs[:, 0]] != labels[pairs[:, 1]]]
    li, lj = labels[cross[:, 0]], labels[cross[:, 1]]
    lo, hi = np.minimum(li, lj), np.maximum(li, lj)
    edges = set(zip(lo.tolist(), hi.tolist()))
    mid = 0.5 * (pts[cross[:, 0]] + pts[cross[:, 1]])
    contacts = np.column_stack([lo, hi, mid]) if len(cross) else np.zeros((0, 4))
    nodes = [tuple(w) for w in word_array(ifs.m, depth).tolist()]
    return CellGraph(depth, nodes, edges, pts, labels, tol, contacts)


def cells_meeting_disk(g: CellGraph, centre, radius: float) -> np.ndarray:
    """Boolean mask of cells with a point within ``radius`` of ``centre``."""
    d = np.hypot(*(g.points - as_point(centre)).T)
    hit = np.zeros(g.n_nodes, bool)
    hit[np.unique(g.labels[d <= radius])] = True
    return hit


def components_after_removal(g: CellGraph, centre, radius: float | None = None) -> int:
    """Connected components left after deleting every cell meeting the disk.

    The default radius is the graph's touch tolerance, so exactly the cells
    containing ``centre`` are removed.
    """
    radius = g.touch_tol if radius is None else radius
    if radius <= 0:
        raise ValueError("radius must be positive")
    hit = cells_meeting_disk(g, centre, radius)
    if hit.all():
        raise ValueError("removal swallowed graph")
    return g.n_components(~hit)


def touch_vertex_counts(g: CellGraph) -> tuple[int, int, int]:
    """``(vertices, edges, components)`` of the cell/touch-point incidence graph.

    Contact points closer than twice the touch tolerance are merged into one
    touch vertex, so three cells meeting at one point do not count as a cycle.
    The incidence graph is a forest iff ``vertices - edges == components``.
    """
    n = g.n_nodes
    if len(g.contacts) == 0:
        return n, 0, n
    xy = g.contacts[:, 2:]
    pairs = cKDTree(xy).query_pairs(2 * g.touch_tol, output_type="ndarray")
    k = len(xy)
    adj = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(k, k))
    n_touch, cluster = connected_components(adj, directed=False)
    cells = g.contacts[:, :2].astype(np.int64)
    inc = np.unique(np.concatenate([
        np.column_stack([cells[:, 0], cluster]),
        np.column_stack([cells[:, 1], cluster])]), axis=0)
    total = n + n_touch
    e = coo_matrix((np.ones(len(inc)), (inc[:, 0], n + inc[:, 1])), shape=(total, total))
    n_comp = int(connected_components(e, directed=False)[0])
    return total, len(inc), n_comp


def write_cloud_csv(cloud, path) -> None:
    """CSV with header ``x,y[,address]``; 17 significant digits."""
    cloud = as_cloud(cloud)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if cloud.addresses is None:
            w.writerow(["x", "y"])
            for x, y in cloud.points:
                w.writerow([f"{x:.17g}", f"{y:.17g}"])
        else:
            w.writerow(["x", "y", "address"])
            wide = cloud.addresses.size and cloud.addresses.max() > 9
            for (x, y), a in zip(cloud.points, cloud.addresses):
                w.writerow([f"{x:.17g}", f"{y:.17g}", address_string(a, wide)])


def address_string(word, wide: bool = False) -> str:
    """Digits concatenated, or dot-separated when some digit exceeds 9."""
    return (".".join if wide else "".join)(str(int(i)) for i in word)


def parse_address(s: str) -> tuple[int, ...]:
    if not s:
        return ()
    return tuple(int(t) for t in (s.split(".") if "." in s else s))


def read_cloud_csv(path) -> PointCloud:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:2] != ["x", "y"]:
        raise ValueError(f"{path}: expected header x,y[,address]")
    has_addr = len(rows[0]) > 2 and rows[0][2] == "address"
    pts = np.array([[float(r[0]), float(r[1])] for r in rows[1:]]).reshape(-1, 2)
    addr = None
    if has_addr:
        words_ = [parse_address(r[2]) for r in rows[1:]]
        depths = {len(w) for w in words_}
        if len(depths) > 1:
            raise ValueError(f"{path}: addresses have mixed depths {sorted(depths)}")
        addr = np.array(words_, dtype=np.int64).reshape(len(words_), depths.pop() if depths else 0)
    return PointCloud(pts, addr)
