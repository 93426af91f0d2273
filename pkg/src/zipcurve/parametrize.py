"""The linear parametrization of a zipper.

``gamma`` is the unique map ``[0, 1] -> K`` with ``gamma(x_i) = z_i`` and
``S_i o gamma = gamma o T_i``.  It is evaluated by expanding ``t`` in the
signed digit system of the partition (inverting the interval maps one digit
at a time) and applying the matching chain of plane maps to an anchor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .attractor import DEFAULT_BUDGET, IFS
from .zipper import Partition, Zipper, as_signature, standard_interval_zipper

MAX_DEPTH = 64


@dataclass
class DigitExpansion:
    digits: tuple[int, ...]
    residual_t: float


@dataclass
class CurvePolyline:
    vertices: np.ndarray
    params: np.ndarray
    level: int

    def __len__(self):
        return len(self.vertices)


def default_depth(zipper: Zipper, target_tol: float = 1e-12) -> int:
    r = max(zipper.ratios)
    return min(MAX_DEPTH, math.ceil(math.log(target_tol) / math.log(r)))


def _check_lengths(zipper: Zipper, partition: Partition):
    if partition.m != zipper.m:
        raise ValueError(f"partition has {partition.m} intervals but zipper has {zipper.m} maps")


def _expand(t: np.ndarray, partition: Partition, eps, depth: int):
    """Vectorized digit expansion; digits are 1-based, shape (n, depth)."""
    cuts = np.asarray(partition.cuts)
    m = partition.m
    eps = np.asarray(eps)
    idx = np.arange(1, m + 1)
    start = cuts[idx - 1 + eps]
    width = cuts[idx - eps] - start  # negative for reversing maps
    t = np.array(t, dtype=float)
    digits = np.empty((len(t), depth), dtype=np.int64)
    for k in range(depth):
        d = np.minimum(np.searchsorted(cuts, t, side="right"), m)
        digits[:, k] = d
        t = np.clip((t - start[d - 1]) / width[d - 1], 0.0, 1.0)
    return digits, t


def digit_expansion(t: float, partition: Partition, eps, depth: int) -> DigitExpansion:
    """Address of ``t``: interval ``[x_{i-1}, x_i)`` picks digit ``i`` (the
    last interval is closed), then ``t`` is pulled back through ``T_i``."""
    eps = as_signature(eps)
    if len(eps) != partition.m:
        raise ValueError("signature length does not match partition")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t = {t!r} outside [0, 1]")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    digits, res = _expand(np.array([t]), partition, eps, depth)
    return DigitExpansion(tuple(int(d) for d in digits[0]), float(res[0]))


def reconstruct(expansion: DigitExpansion, partition: Partition, eps) -> float:
    """Apply ``T_{i_1} o ... o T_{i_k}`` to the residual."""
    maps = standard_interval_zipper(partition, eps)
    t = expansion.residual_t
    for d in reversed(expansion.digits):
        t = maps[d - 1](t)
    return t


def gamma_many(zipper: Zipper, partition: Partition, ts, depth: int) -> np.ndarray:
    """``gamma`` at every parameter in ``ts``; returns (n, 2)."""
    _check_lengths(zipper, partition)
    ts = np.asarray(ts, dtype=float).reshape(-1)
    if np.any((ts < 0) | (ts > 1)) or not np.all(np.isfinite(ts)):
        raise ValueError("parameters must lie in [0, 1]")
    digits, res = _expand(ts, partition, zipper.signature, depth)
    lin = np.stack([f.linear for f in zipper.maps])
    tr = np.stack([f.translation for f in zipper.maps])
    # gamma(0) = z_0 and gamma(1) = z_m exactly; any other anchor is within the
    # truncation bound
    p = np.where((res == 1.0)[:, None], zipper.vertices[-1], zipper.vertices[0])
    for k in range(depth - 1, -1, -1):
        d = digits[:, k] - 1
        p = np.einsum("nab,nb->na", lin[d], p) + tr[d]
    return p


def gamma(zipper: Zipper, partition: Partition, t: float, depth: int | None = None) -> np.ndarray:
    """Point ``gamma(t)`` truncated after ``depth`` digits."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t = {t!r} outside [0, 1]")
    depth = default_depth(zipper) if depth is None else depth
    return gamma_many(zipper, partition, [t], depth)[0]


def truncation_bound(zipper: Zipper, depth: int) -> float:
    """Upper bound on ``|gamma_depth(t) - gamma(t)|``."""
    _, radius = IFS(zipper.maps).invariant_ball(zipper.vertices)
    return 2 * radius * max(zipper.ratios) ** depth


def conjugacy_residual(zipper: Zipper, partition: Partition, samples: int = 1000,
                       depth: int = 40, rng_seed: int = 0) -> float:
    """``max |S_i(gamma(t)) - gamma(T_i(t))|`` over random ``(i, t)``."""
    _check_lengths(zipper, partition)
    if samples <= 0:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(rng_seed)
    i = rng.integers(0, zipper.m, size=samples)
    t = rng.random(samples)
    tmaps = standard_interval_zipper(partition, zipper.signature)
    start = np.array([f.start for f in tmaps])
    end = np.array([f.end for f in tmaps])
    ti = np.clip(start[i] * (1 - t) + end[i] * t, 0.0, 1.0)
    g = gamma_many(zipper, partition, t, depth)
    lin = np.stack([f.linear for f in zipper.maps])
    tr = np.stack([f.translation for f in zipper.maps])
    lhs = np.einsum("nab,nb->na", lin[i], g) + tr[i]
    rhs = gamma_many(zipper, partition, ti, depth)
    return float(np.hypot(*(lhs - rhs).T).max())


def curve_polyline(zipper: Zipper, partition: Partition, level: int,
                   budget: int = DEFAULT_BUDGET) -> CurvePolyline:
    """Level-``level`` polygonal approximation through ``gamma`` of the level grid.

    Start from the vertex chain; each refinement concatenates the images of
    the chain under ``S_1..S_m``, reversing block ``i`` when ``e_i = 1`` and
    dropping the repeated junction points.
    """
    _check_lengths(zipper, partition)
    if level < 0:
        raise ValueError("level must be >= 0")
    m = zipper.m
    if m ** (level + 1) + 1 > budget:
        raise ValueError("depth budget exceeded")
    tmaps = standard_interval_zipper(partition, zipper.signature)
    verts = np.array(zipper.vertices)
    params = np.array(partition.cuts)
    for _ in range(level):
        vblocks, pblocks = [], []
        for i, (f, tm, e) in enumerate(zip(zipper.maps, tmaps, zipper.signature)):
            v = verts @ f.linear.T + f.translation
            p = tm(params)
            if e:
                v, p = v[::-1], p[::-1]
            if i:
                v, p = v[1:], p[1:]
            vblocks.append(v)
            pblocks.append(p)
        verts = np.vstack(vblocks)
        params = np.concatenate(pblocks)
    return CurvePolyline(verts, params, level)


def _envelope_slope(h: np.ndarray, d: np.ndarray, n_bins: int) -> float:
    edges = np.geomspace(h.min(), h.max() * (1 + 1e-12), n_bins + 1)
    which = np.clip(np.searchsorted(edges, h, side="right") - 1, 0, n_bins - 1)
    xs, ys = [], []
    for b in range(n_bins):
        sel = which == b
        if not np.any(sel):
            continue
        xs.append(math.log(edges[b + 1]))
        ys.append(math.log(d[sel].max()))
    if len(xs) < 2:
        raise ValueError("too few separation scales for a slope")
    return float(np.polyfit(xs, ys, 1)[0])


@dataclass
class HolderEstimate:
    exponent: float
    n_pairs: int
    h_min: float
    h_max: float

    def __float__(self):
        return self.exponent


def estimate_holder(zipper: Zipper, partition: Partition, n_pairs: int = 100_000,
                    depth: int = 40, rng_seed: int = 0, h_max: float = 0.1,
                    n_bins: int = 24) -> HolderEstimate:
    """Empirical Hölder exponent of ``gamma``.

    Separations ``h = |s - t|`` are drawn log-uniformly between ``h_min`` and
    ``h_max``; in each of ``n_bins`` logarithmic bins the largest observed
    ``|gamma(s) - gamma(t)|`` is kept, and the exponent is the slope of that
    upper envelope in log-log coordinates.  The multiplicative constant only
    shifts the intercept.
    """
    _check_lengths(zipper, partition)
    if n_pairs <= 0:
        raise ValueError("n_pairs must be positive")
    resolution = float(partition.widths.max()) ** depth
    h_min = max(1e-7, 2 * resolution)
    if h_min >= h_max:
        raise ValueError(f"depth {depth} is too shallow for separations below {h_max}")
    rng = np.random.default_rng(rng_seed)
    h = np.exp(rng.uniform(math.log(h_min), math.log(h_max), n_pairs))
    s = rng.random(n_pairs) * (1.0 - h)
    t = s + h
    d = np.hypot(*(gamma_many(zipper, partition, s, depth)
                   - gamma_many(zipper, partition, t, depth)).T)
    ok = d > 0
    return HolderEstimate(_envelope_slope(h[ok], d[ok], n_bins), int(ok.sum()), h_min, h_max)
