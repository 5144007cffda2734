"""Two-coloring-number orderings of plane graphs."""

from .constructive import col2_order_planar, normalize, solve, solve_plane
from .exact import col2_exact, feasible_d, prove_lower_bound
from .heuristics import greedy_backward
from .ordering import back_profile, back_set, friends, verify
from .plane_graph import FaceWalk, PlaneGraph

__all__ = [
    "FaceWalk",
    "PlaneGraph",
    "back_profile",
    "back_set",
    "col2_exact",
    "col2_order_planar",
    "feasible_d",
    "friends",
    "greedy_backward",
    "normalize",
    "prove_lower_bound",
    "solve",
    "solve_plane",
    "verify",
]

__version__ = "0.1.0"
