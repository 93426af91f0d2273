"""Plane points and similarity maps.

A similarity is stored as a full 2x2 matrix plus a translation so that
compositions stay closed under matrix products.  Points are plain numpy
arrays of shape ``(2,)`` (or ``(n, 2)`` for batches).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIMILARITY_TOL = 1e-9


def as_point(p) -> np.ndarray:
    """Coerce ``p`` to a finite float array of shape (2,)."""
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.shape != (2,):
        raise ValueError(f"expected a 2D point, got shape {np.shape(p)}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"point has non-finite coordinates: {arr.tolist()}")
    return arr


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Similarity2:
    """The plane map ``x -> linear @ x + translation``."""

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        lin = _frozen(self.linear)
        if lin.shape != (2, 2):
            raise ValueError("linear part must be 2x2")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", _frozen(as_point(self.translation)))

    def __call__(self, p):
        return apply_map(self, p)

    def __matmul__(self, other: "Similarity2") -> "Similarity2":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Similarity2):
            return NotImplemented
        return bool(np.array_equal(self.linear, other.linear)
                    and np.array_equal(self.translation, other.translation))

    def __hash__(self):
        return hash((self.linear.tobytes(), self.translation.tobytes()))

    def __repr__(self):
        return (f"Similarity2(linear={self.linear.tolist()}, "
                f"translation={self.translation.tolist()})")

    @property
    def ratio(self) -> float:
        return contraction_ratio(self)

    @property
    def reflects(self) -> bool:
        """True for orientation-reversing maps."""
        return bool(np.linalg.det(self.linear) < 0)

    @property
    def angle_deg(self) -> float:
        """Rotation angle of the direct part (after removing a reflection)."""
        a, c = self.linear[0, 0], self.linear[1, 0]
        return math.degrees(math.atan2(c, a))

    def isclose(self, other: "Similarity2", tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.linear, other.linear, rtol=0, atol=tol)
                    and np.allclose(self.translation, other.translation, rtol=0, atol=tol))


def identity() -> Similarity2:
    return Similarity2(np.eye(2), (0.0, 0.0))


def scaling(ratio: float, translate=(0.0, 0.0)) -> Similarity2:
    """``x -> ratio * x + translate``."""
    return Similarity2(ratio * np.eye(2), translate)


def from_params(ratio: float, angle_deg: float = 0.0, reflect: bool = False,
                translate=(0.0, 0.0)) -> Similarity2:
    """Build ``x -> ratio * R(angle) @ F @ x + translate``, F mirroring in the x axis."""
    th = math.radians(angle_deg)
    c, s = math.cos(th), math.sin(th)
    rot = np.array([[c, -s], [s, c]])
    if reflect:
        rot = rot @ np.diag([1.0, -1.0])
    return Similarity2(ratio * rot, translate)


def _complex(p) -> complex:
    p = as_point(p)
    return complex(p[0], p[1])


def similarity_from_point_pair(p, q, p2, q2, reflect: bool = False) -> Similarity2:
    """The direct (or mirror) similarity sending ``p -> p2`` and ``q -> q2``.

    Written as ``z -> a z + b`` (or ``a conj(z) + b``) in complex form, which
    makes the result an exact similarity by construction.
    """
    zp, zq, wp, wq = map(_complex, (p, q, p2, q2))
    if zp == zq:
        raise ValueError("coincident source points")
    if reflect:
        a = (wq - wp) / (zq - zp).conjugate()
        b = wp - a * zp.conjugate()
        lin = [[a.real, a.imag], [a.imag, -a.real]]
    else:
        a = (wq - wp) / (zq - zp)
        b = wp - a * zp
        lin = [[a.real, -a.imag], [a.imag, a.real]]
    return Similarity2(lin, (b.real, b.imag))


def apply_map(f: Similarity2, p) -> np.ndarray:
    """Apply ``f`` to one point (shape (2,)) or a batch (shape (n, 2))."""
    p = np.asarray(p, dtype=float)
    if p.ndim == 1:
        return f.linear @ as_point(p) + f.translation
    return p @ f.linear.T + f.translation


def compose(f: Similarity2, g: Similarity2) -> Similarity2:
    """``f o g``: apply ``g`` first."""
    return Similarity2(f.linear @ g.linear, f.linear @ g.translation + f.translation)


def compose_chain(maps) -> Similarity2:
    """``maps[0] o maps[1] o ... o maps[-1]``; identity for an empty chain."""
    out = identity()
    for f in maps:
        out = compose(out, f)
    return out


def contraction_ratio(f: Similarity2) -> float:
    """The ``r`` with ``linear.T @ linear = r**2 I``."""
    gram = f.linear.T @ f.linear
    r2 = 0.5 * (gram[0, 0] + gram[1, 1])
    if np.max(np.abs(gram - r2 * np.eye(2))) > SIMILARITY_TOL * max(1.0, r2):
        raise ValueError(f"map is not a similarity: {f!r}")
    return math.sqrt(r2)


def fixed_point(f: Similarity2) -> np.ndarray:
    """Solve ``(I - linear) x = translation`` directly."""
    if contraction_ratio(f) >= 1.0:
        raise ValueError("not a contraction")
    return np.linalg.solve(np.eye(2) - f.linear, f.translation)
