"""Convex-geometric substrate: supports, polytopes, normal cones and fans.

Example:
    >>> from fewlab.geometry import Support, hull_vertices
    >>> from fewlab.geometry import minkowski_vertex_decomposition
    >>> square = hull_vertices(Support.of([(0, 0), (1, 0), (0, 1), (1, 1)]))
    >>> minkowski_vertex_decomposition([square, square]).vertex_count
    4
"""

from .support import *
from .lp import *
from .cdd_utils import *
from .polytope import *
from .minkowski import *
