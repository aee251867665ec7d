"""Polytopes given by vertices, polyhedral cones, and normal cones.

Normal cones follow the lower-face convention: the normal cone of P at a
vertex v is the set of directions y with ``<v, y> <= <x, y>`` for every
x in P, i.e. the directions that v minimizes.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import nnls

from ..core.errors import NotAVertexError
from .cdd_utils import halfspaces_to_generators
from .lp import exact_in_hull, exact_rank, float_in_hull
from .support import Coordinate, Point, Support, normalize_points

__all__ = [
    "MERGE_TOL",
    "affine_dimension",
    "Polytope",
    "hull_vertices",
    "Cone",
    "normal_cone",
]


MERGE_TOL = 1e-9


def _is_exact(points: Sequence[Point]) -> bool:
    return all(isinstance(x, Fraction) for p in points for x in p)


def affine_dimension(points: Sequence[Sequence[Coordinate]]) -> int:
    """Dimension of the affine hull of a nonempty point list.

    Exact points use rational elimination; float points use an SVD rank with
    a tolerance relative to the spread of the points.
    """
    pts = normalize_points(points)
    if len(pts) <= 1:
        return 0
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    if _is_exact(pts):
        return exact_rank(diffs)
    arr = np.asarray(diffs, dtype=float)
    scale = max(1.0, float(np.max(np.abs(arr))))
    return int(np.linalg.matrix_rank(arr, tol=MERGE_TOL * scale))


@dataclass(frozen=True)
class Polytope:
    """Convex hull of finitely many points, stored by its vertices.

    Attributes:
        vertices: The vertices, in the order they appear in the source
            support.
        ambient_dim: Dimension n of the surrounding space.
        affine_dim: Dimension of the affine hull.
    """

    vertices: tuple[Point, ...]
    ambient_dim: int
    affine_dim: int

    def __post_init__(self):
        if not self.vertices:
            raise ValueError("A polytope needs at least one vertex")
        if not 0 <= self.affine_dim <= self.ambient_dim:
            raise ValueError(
                f"Affine dimension {self.affine_dim} outside [0, {self.ambient_dim}]"
            )
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise ValueError(f"Vertex {v} is not in R^{self.ambient_dim}")

    @property
    def exact(self) -> bool:
        return _is_exact(self.vertices)

    def as_array(self) -> np.ndarray:
        """Vertices as a (k, n) float array."""
        return np.array([[float(x) for x in v] for v in self.vertices],
                        dtype=float).reshape(len(self.vertices), self.ambient_dim)

    def index_of(self, point: Sequence[Coordinate]) -> int | None:
        """Index of the vertex equal to `point`, or None."""
        target = normalize_points([point])[0]
        if self.exact and _is_exact([target]):
            for i, v in enumerate(self.vertices):
                if v == target:
                    return i
            return None
        arr = self.as_array()
        dist = np.linalg.norm(arr - np.asarray(target, dtype=float), axis=1)
        i = int(np.argmin(dist))
        scale = max(1.0, float(np.max(np.abs(arr))))
        return i if dist[i] <= MERGE_TOL * scale else None


def _merge_close(points: Sequence[Point]) -> list[int]:
    """Indices of points kept after merging float points closer than MERGE_TOL."""
    arr = np.array([[float(x) for x in p] for p in points], dtype=float)
    scale = max(1.0, float(np.max(np.abs(arr)))) if len(arr) else 1.0
    kept: list[int] = []
    for i in range(len(arr)):
        if all(np.linalg.norm(arr[i] - arr[j]) > MERGE_TOL * scale for j in kept):
            kept.append(i)
    return kept


def hull_vertices(support: Support) -> Polytope:
    """Vertices of the convex hull of a support.

    A point is a vertex when it is not in the convex hull of the remaining
    points. The test is exact for rational supports.

    Args:
        support: A nonempty support.

    Returns:
        The polytope, vertices listed in support order.
    """
    points = list(support.points)
    exact = support.exact
    if not exact:
        points = [points[i] for i in _merge_close(points)]
    if len(points) <= 2:
        vertices = tuple(points)
    elif exact:
        vertices = tuple(
            p for i, p in enumerate(points)
            if not exact_in_hull(p, points[:i] + points[i + 1:])
        )
    else:
        arr = np.array([[float(x) for x in p] for p in points], dtype=float)
        vertices = tuple(
            p for i, p in enumerate(points)
            if not float_in_hull(arr[i], np.delete(arr, i, axis=0))
        )
    return Polytope(vertices, support.dim, affine_dimension(points))


@dataclass(frozen=True)
class Cone:
    """A polyhedral cone given by generators and, when known, halfspaces.

    Attributes:
        generators: Unit generator vectors. Lineality directions appear
            with both signs.
        ambient_dim: Dimension of the surrounding space.
        halfspaces: Rows N with ``cone = {y : N y >= 0}``, or None.
        lineality_dim: Dimension of the largest contained subspace.
    """

    generators: tuple[tuple[float, ...], ...]
    ambient_dim: int
    halfspaces: tuple[tuple[float, ...], ...] | None = None
    lineality_dim: int = 0

    @property
    def pointed(self) -> bool:
        return self.lineality_dim == 0

    def as_array(self) -> np.ndarray:
        """Generators as a (k, n) float array."""
        return np.asarray(self.generators, dtype=float).reshape(-1, self.ambient_dim)

    def contains(self, y: Sequence[float], tol: float = 1e-9) -> bool:
        """Whether `y` lies in the cone, up to a relative tolerance."""
        y = np.asarray(y, dtype=float)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return True
        if self.halfspaces is not None:
            normals = np.asarray(self.halfspaces, dtype=float).reshape(-1, self.ambient_dim)
            if len(normals) == 0:
                return True
            scale = np.linalg.norm(normals, axis=1) * norm
            return bool(np.all(normals @ y >= -tol * scale))
        gens = self.as_array()
        if len(gens) == 0:
            return False
        _, residual = nnls(gens.T, y)
        return bool(residual <= tol * norm * 10)


def normal_cone(polytope: Polytope, vertex: Sequence[Coordinate]) -> Cone:
    """Normal cone of a polytope at one of its vertices.

    Args:
        polytope: The polytope.
        vertex: A vertex of `polytope`.

    Returns:
        The cone of directions minimized at `vertex`, with both generators
        and halfspaces filled in.

    Raises:
        NotAVertexError: If `vertex` is not a vertex of `polytope`.
    """
    idx = polytope.index_of(vertex)
    if idx is None:
        raise NotAVertexError(f"{tuple(vertex)} is not a vertex of the polytope")
    n = polytope.ambient_dim
    arr = polytope.as_array()
    normals = np.delete(arr, idx, axis=0) - arr[idx]
    rays, lines = halfspaces_to_generators(normals, n)
    generators = [tuple(r.tolist()) for r in rays]
    for line in lines:
        generators.append(tuple(line.tolist()))
        generators.append(tuple((-line).tolist()))
    return Cone(
        generators=tuple(generators),
        ambient_dim=n,
        halfspaces=tuple(tuple(row.tolist()) for row in normals),
        lineality_dim=len(lines),
    )
