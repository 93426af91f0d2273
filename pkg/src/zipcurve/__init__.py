"""Self-similar zippers, their attractors and linear parametrizations."""
from . import catalog, dendrite
from .attractor import (IFS, CellGraph, PointCloud, cell_adjacency_graph, chaos_game,
                        components_after_removal, hausdorff_distance, hutchinson_gap,
                        hutchinson_step, iterate_addresses)
from .catalog import get_example, list_examples, resolve_reflections
from .config import load_config
from .geom import (Similarity2, apply_map, compose, contraction_ratio, fixed_point,
                   similarity_from_point_pair)
from .parametrize import (conjugacy_residual, curve_polyline, digit_expansion, estimate_holder,
                          gamma, gamma_many, reconstruct)
from .render import cloud_drawing, curve_drawing, render_svg
from .zipper import (Partition, Zipper, build_planar_zipper, standard_interval_zipper,
                     validate_zipper)

__version__ = "0.1.0"
