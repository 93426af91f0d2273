"""Zippers: vertex chains, signatures, partitions and the interval zipper."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geom import Similarity2, apply_map, as_point, contraction_ratio, similarity_from_point_pair

DEFAULT_TOL = 1e-9


def as_signature(eps) -> tuple[int, ...]:
    bits = tuple(eps)
    if len(bits) < 1:
        raise ValueError("signature must have at least one entry")
    for b in bits:
        if isinstance(b, bool) or b not in (0, 1):
            raise ValueError("signature values must be 0 or 1")
    return tuple(int(b) for b in bits)


@dataclass(frozen=True)
class Partition:
    """Cut points ``0 = x_0 < x_1 < ... < x_m = 1``."""

    cuts: tuple[float, ...]

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        if len(cuts) < 2:
            raise ValueError("partition needs at least two cuts")
        if cuts[0] != 0.0:
            raise ValueError(f"partition must start at 0, got cut 0 = {cuts[0]!r}")
        if cuts[-1] != 1.0:
            raise ValueError(f"partition must end at 1, got cut {len(cuts) - 1} = {cuts[-1]!r}")
        for i in range(1, len(cuts)):
            if not cuts[i] > cuts[i - 1]:
                raise ValueError(
                    f"partition must be strictly increasing: cut {i} = {cuts[i]!r} "
                    f"does not exceed cut {i - 1} = {cuts[i - 1]!r}")
        object.__setattr__(self, "cuts", cuts)

    @classmethod
    def uniform(cls, m: int) -> "Partition":
        if m < 1:
            raise ValueError("need m >= 1")
        return cls(tuple(i / m for i in range(m)) + (1.0,))

    @classmethod
    def proportional(cls, weights) -> "Partition":
        """Widths proportional to ``weights`` (e.g. contraction ratios)."""
        w = np.asarray(weights, dtype=float)
        if np.any(w <= 0):
            raise ValueError("weights must be positive")
        c = np.concatenate([[0.0], np.cumsum(w) / w.sum()])
        return cls(tuple(c[:-1]) + (1.0,))

    @property
    def m(self) -> int:
        return len(self.cuts) - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.cuts)


@dataclass(frozen=True)
class IntervalMap:
    """``t -> start * (1 - t) + end * t``, exact at both ends of [0, 1]."""

    start: float
    end: float

    @property
    def slope(self) -> float:
        return self.end - self.start

    @property
    def offset(self) -> float:
        return self.start

    def __call__(self, t):
        return self.start * (1 - t) + self.end * t

    def inverse(self, t):
        return (t - self.offset) / self.slope

    def as_similarity(self) -> Similarity2:
        """Embed as a plane map acting on the x axis (y is scaled by |slope|)."""
        return Similarity2([[self.slope, 0.0], [0.0, abs(self.slope)]], (self.offset, 0.0))


def standard_interval_zipper(partition: Partition, eps) -> list[IntervalMap]:
    """``T_i(t) = x_{i-1+e_i} (1 - t) + x_{i-e_i} t`` for each i."""
    eps = as_signature(eps)
    if len(eps) != partition.m:
        raise ValueError(f"signature length {len(eps)} does not match partition with "
                         f"{partition.m} intervals")
    x = partition.cuts
    out = []
    for i, e in enumerate(eps, start=1):
        start, end = x[i - 1 + e], x[i - e]
        out.append(IntervalMap(start, end))
    return out


@dataclass(frozen=True, eq=False)
class Zipper:
    """Maps ``S_1..S_m`` with vertices ``z_0..z_m`` and a 0/1 signature.

    Construction only checks shapes; use :func:`validate_zipper` to check the
    endpoint equalities.
    """

    maps: tuple[Similarity2, ...]
    vertices: np.ndarray
    signature: tuple[int, ...]
    reflects: tuple[bool, ...] | None = field(default=None)

    def __post_init__(self):
        maps = tuple(self.maps)
        verts = np.array([as_point(v) for v in self.vertices], dtype=float)
        verts.setflags(write=False)
        sig = as_signature(self.signature)
        if len(maps) != len(sig):
            raise ValueError(f"{len(maps)} maps but signature of length {len(sig)}")
        if verts.shape[0] != len(maps) + 1:
            raise ValueError(f"{len(maps)} maps need {len(maps) + 1} vertices, got {verts.shape[0]}")
        if np.array_equal(verts[0], verts[-1]):
            raise ValueError("initial and final vertices coincide")
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "signature", sig)
        if self.reflects is not None:
            object.__setattr__(self, "reflects", tuple(bool(r) for r in self.reflects))

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> list[float]:
        return [contraction_ratio(f) for f in self.maps]

    def ifs(self):
        from .attractor import IFS
        return IFS(self.maps)

    def endpoint_targets(self, j: int) -> tuple[np.ndarray, np.ndarray]:
        """Required images of ``z_0`` and ``z_m`` under map ``j`` (1-based)."""
        e = self.signature[j - 1]
        return self.vertices[j - 1 + e], self.vertices[j - e]


def build_planar_zipper(vertices, eps, reflects=None) -> Zipper:
    """Solve for the similarities fixed by the endpoint constraints.

    ``reflects[j]`` picks the mirror solution for map ``j + 1``; the default
    is all direct.
    """
    verts = [as_point(v) for v in vertices]
    eps = as_signature(eps)
    m = len(eps)
    if len(verts) != m + 1:
        raise ValueError(f"signature of length {m} needs {m + 1} vertices, got {len(verts)}")
    if reflects is None:
        reflects = (False,) * m
    reflects = tuple(bool(r) for r in reflects)
    if len(reflects) != m:
        raise ValueError(f"need {m} reflect flags, got {len(reflects)}")
    z0, zm = verts[0], verts[-1]
    span = float(np.hypot(*(zm - z0)))
    if span == 0.0:
        raise ValueError("initial and final vertices coincide")
    maps = []
    for j in range(1, m + 1):
        e = eps[j - 1]
        a, b = verts[j - 1 + e], verts[j - e]
        length = float(np.hypot(*(b - a)))
        if length == 0.0:
            raise ValueError(f"degenerate map {j}")
        if length >= span:
            raise ValueError(f"map {j} not contracting (ratio {length / span:.6g})")
        maps.append(similarity_from_point_pair(z0, zm, a, b, reflects[j - 1]))
    return Zipper(tuple(maps), np.array(verts), eps, reflects)


@dataclass
class MapCheck:
    index: int
    start_residual: float
    end_residual: float
    ratio: float


@dataclass
class ValidationReport:
    maps: list[MapCheck]
    touch_residuals: list[float]
    tol: float
    passed: bool

    @property
    def max_residual(self) -> float:
        vals = [max(c.start_residual, c.end_residual) for c in self.maps] + self.touch_residuals
        return max(vals) if vals else 0.0

    def failures(self) -> list[str]:
        out = []
        for c in self.maps:
            if c.start_residual > self.tol:
                out.append(f"map {c.index}: |S(z_0) - target| = {c.start_residual:.3g}")
            if c.end_residual > self.tol:
                out.append(f"map {c.index}: |S(z_m) - target| = {c.end_residual:.3g}")
            if not c.ratio < 1.0:
                out.append(f"map {c.index}: ratio {c.ratio:.6g} is not contracting")
        for j, r in enumerate(self.touch_residuals, start=1):
            if r > self.tol:
                out.append(f"maps {j},{j + 1} do not meet at z_{j} (gap {r:.3g})")
        return out


def validate_zipper(z: Zipper, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Residuals of the endpoint equalities, ratios and the chain-touch check."""
    z0, zm = z.vertices[0], z.vertices[-1]
    checks = []
    meets = []  # image of the endpoint that should land on z_j, for map j (left) and j+1 (right)
    for j, f in enumerate(z.maps, start=1):
        a, b = z.endpoint_targets(j)
        fa, fb = apply_map(f, z0), apply_map(f, zm)
        try:
            r = contraction_ratio(f)
        except ValueError:
            r = float("inf")
        checks.append(MapCheck(j, float(np.hypot(*(fa - a))), float(np.hypot(*(fb - b))), r))
        e = z.signature[j - 1]
        # (image landing on z_{j-1}, image landing on z_j)
        meets.append((fb, fa) if e else (fa, fb))
    touch = [float(np.hypot(*(meets[j][1] - meets[j + 1][0]))) for j in range(z.m - 1)]
    ok = all(c.start_residual <= tol and c.end_residual <= tol and c.ratio < 1.0 for c in checks)
    ok = ok and all(t <= tol for t in touch)
    return ValidationReport(checks, touch, tol, ok)
