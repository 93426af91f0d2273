"""Built-in zippers: the gasket, square, carpet and dendrite examples plus an
interval baseline.

Two endpoint constraints leave each plane map with a direct and a mirror
solution.  The stored ``reflects`` flags were found by
:func:`resolve_reflections` against an independent reference attractor
(gasket, square, carpet), or by the contact count of the cell graph where no
reference exists (dendrite zipper).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .attractor import IFS, hausdorff_distance, iterate_cloud
from .geom import scaling
from .zipper import Partition, Zipper, build_planar_zipper

S3 = math.sqrt(3.0)


def gasket_reference() -> IFS:
    return IFS((scaling(0.5), scaling(0.5, (0.5, 0.0)), scaling(0.5, (0.25, S3 / 4))))


def carpet_reference() -> IFS:
    return IFS(tuple(scaling(1 / 3, (i / 3, j / 3))
                     for i in range(3) for j in range(3) if (i, j) != (1, 1)))


def unit_square_reference() -> IFS:
    return IFS(tuple(scaling(0.5, (i / 2, j / 2)) for i in range(2) for j in range(2)))


def filled_square_sample(n: int = 129) -> np.ndarray:
    g = np.linspace(0.0, 1.0, n)
    return np.column_stack([np.repeat(g, n), np.tile(g, n)])


def segment_reference() -> IFS:
    return IFS((scaling(0.5), scaling(0.5, (0.5, 0.0))))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    vertices: tuple[tuple[float, float], ...]
    signature: tuple[int, ...]
    reflects: tuple[bool, ...]
    partition: str | tuple[float, ...] = "uniform"
    notes: str = ""
    experimental: bool = False
    reference: Callable[[], IFS | np.ndarray] | None = field(default=None, compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.signature)

    def zipper(self) -> Zipper:
        return build_planar_zipper(self.vertices, self.signature, self.reflects)

    def partition_obj(self) -> Partition:
        if self.partition == "uniform":
            return Partition.uniform(self.m)
        return Partition(self.partition)


CATALOG: dict[str, CatalogEntry] = {
    e.name: e for e in (
        CatalogEntry(
            "gasket",
            ((0.0, 0.0), (0.25, S3 / 4), (0.75, S3 / 4), (1.0, 0.0)),
            (1, 0, 1),
            (False, False, False),
            notes="Sierpinski gasket; all-direct orientation matches the three-map gasket IFS.",
            reference=gasket_reference,
        ),
        CatalogEntry(
            "square",
            ((0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (1.0, 0.5), (1.0, 0.0)),
            (1, 0, 0, 1),
            (False, False, False, False),
            notes="Plane-filling curve of the unit square; only the all-direct orientation "
                  "tiles the square.",
            reference=filled_square_sample,
        ),
        CatalogEntry(
            "carpet",
            ((0.0, 0.0), (0.0, 1 / 3), (1 / 3, 1 / 3), (1 / 3, 2 / 3), (1 / 3, 1.0),
             (2 / 3, 1.0), (2 / 3, 2 / 3), (2 / 3, 1 / 3), (2 / 3, 0.0), (1.0, 0.0)),
            (0, 1, 0, 0, 1, 0, 0, 1, 0),
            (True, False, False, False, False, False, False, False, False),
            notes="Nine maps of ratio 1/3 for an eight-cell carpet: with this orientation the "
                  "second map repeats the first map's cell, so the images cover exactly the "
                  "carpet's eight cells (one overlap) and the attractor is the carpet, not the "
                  "full square.  Experimental because the images overlap.",
            experimental=True,
            reference=carpet_reference,
        ),
        CatalogEntry(
            "zipper_dendrite",
            ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 2.0), (2.0, 2.0), (2.0, 1.0),
             (2.0, 0.0), (3.0, 0.0)),
            (0, 0, 1, 1, 1, 0, 0),
            (False, True, True, False, True, False, True),
            notes="No reference set; orientation is the lexicographically first one whose "
                  "depth-2 cell graph has the fewest adjacencies (a path at depth 1). "
                  "Consecutive copies overlap along arcs for every orientation.",
        ),
        CatalogEntry(
            "interval",
            ((0.0, 0.0), (0.5, 0.0), (1.0, 0.0)),
            (0, 0),
            (False, False),
            notes="Baseline: the unit segment, gamma(t) = (t, 0).",
            reference=segment_reference,
        ),
    )
}


def list_examples() -> list[str]:
    return list(CATALOG)


def get_example(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; valid names: {', '.join(CATALOG)}") from None


def sample_attractor(ifs: IFS, budget: int, extra_points=()) -> np.ndarray:
    """Images of the fixed points (and ``extra_points``) at the deepest level
    that keeps the sample within ``budget`` points."""
    seeds = [ifs.fixed_points()]
    if len(extra_points):
        seeds.append(np.asarray(extra_points, dtype=float).reshape(-1, 2))
    seeds = np.vstack(seeds)
    depth = 0
    while ifs.m ** (depth + 1) * len(seeds) <= budget:
        depth += 1
    return iterate_cloud(ifs, seeds, depth)


@dataclass
class ReflectionSearch:
    flags: tuple[bool, ...]
    distance: float
    distances: dict[tuple[bool, ...], float]


def resolve_reflections(vertices, signature, reference, sample_budget: int = 20_000,
                        ceiling: float | None = None) -> ReflectionSearch:
    """Try all ``2**m`` orientation choices and keep the one whose attractor
    sample is closest (Hausdorff) to the reference sample.

    ``reference`` is an IFS or a point array.  Ties keep the earlier
    candidate in ``itertools.product`` order, which starts at all-direct.
    """
    m = len(signature)
    if m > 12:
        raise ValueError("orientation search is limited to m <= 12")
    ref = sample_attractor(reference, sample_budget) if isinstance(reference, IFS) \
        else np.asarray(reference, dtype=float).reshape(-1, 2)
    if ceiling is None:
        ceiling = 0.05 * float(np.ptp(ref, axis=0).max())
    distances = {}
    for flags in itertools.product((False, True), repeat=m):
        z = build_planar_zipper(vertices, signature, flags)
        sample = sample_attractor(z.ifs(), sample_budget, z.vertices)
        distances[flags] = hausdorff_distance(sample, ref)
    best = min(distances, key=distances.get)
    if distances[best] > ceiling:
        raise ValueError(f"no orientation choice matches reference (best distance "
                         f"{distances[best]:.4g} > {ceiling:.4g})")
    return ReflectionSearch(best, distances[best], distances)


def reference_distance(entry: CatalogEntry, reference=None, sample_budget: int = 20_000) -> float:
    """Hausdorff distance between the entry's attractor sample and a reference sample."""
    reference = entry.reference() if reference is None else reference
    ref = sample_attractor(reference, sample_budget) if isinstance(reference, IFS) else reference
    z = entry.zipper()
    return hausdorff_distance(sample_attractor(z.ifs(), sample_budget, z.vertices), ref)
