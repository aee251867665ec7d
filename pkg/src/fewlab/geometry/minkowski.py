"""Minkowski sums of polytopes, their vertex decomposition and normal fan.

Every vertex of ``P_1 + ... + P_n`` is the sum of one vertex of each
summand, and the summand vertices are uniquely determined. Candidates are
found by sweeping all vertex tuples and asking an LP for a direction that
each summand vertex strictly minimizes.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..core.errors import DegenerateFanError
from .cdd_utils import generators_to_halfspaces
from .lp import separation_slack
from .polytope import MERGE_TOL, Polytope, affine_dimension, normal_cone
from .support import Point

__all__ = [
    "SLACK_TOL",
    "BORDERLINE_BAND",
    "BOUNDARY_TOL",
    "SumVertex",
    "VertexDecomposition",
    "minkowski_vertex_decomposition",
    "minkowski_sum",
    "fan_cover_check",
]


SLACK_TOL = 1e-9
BORDERLINE_BAND = (1e-12, 1e-7)
BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class SumVertex:
    """One vertex of a Minkowski sum with its summand decomposition.

    Attributes:
        point: The vertex of the sum.
        parts: One vertex per summand, adding up to `point`.
        part_indices: Index of each part in its summand's vertex list.
        weight: A direction in [-1, 1]^n minimized exactly at the parts.
        slack: Separation margin of `weight`.
    """

    point: Point
    parts: tuple[Point, ...]
    part_indices: tuple[int, ...]
    weight: tuple[float, ...]
    slack: float


@dataclass(frozen=True)
class VertexDecomposition:
    """All vertices of a Minkowski sum, each with its unique decomposition.

    Attributes:
        entries: The sum vertices.
        ambient_dim: Dimension n.
        borderline: Part-index tuples whose separation slack fell inside
            the unstable band; they are reported, not accepted or dropped
            silently.
    """

    entries: tuple[SumVertex, ...]
    ambient_dim: int
    borderline: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        seen = set()
        for entry in self.entries:
            if entry.part_indices in seen:
                raise ValueError("Vertex decomposition must be injective")
            seen.add(entry.part_indices)
            total = np.sum([[float(x) for x in p] for p in entry.parts], axis=0)
            if not np.allclose(total, [float(x) for x in entry.point], atol=1e-9):
                raise ValueError(f"Parts of {entry.point} do not sum to it")

    @property
    def vertex_count(self) -> int:
        """The number V_0 of vertices of the sum."""
        return len(self.entries)

    def points(self) -> np.ndarray:
        return np.array([[float(x) for x in e.point] for e in self.entries],
                        dtype=float).reshape(-1, self.ambient_dim)

    def parts_of(self, point: Sequence[float]) -> tuple[Point, ...] | None:
        """Decomposition of the sum vertex `point`, or None if it is not one."""
        target = np.asarray([float(x) for x in point], dtype=float)
        for entry in self.entries:
            if np.allclose([float(x) for x in entry.point], target, atol=MERGE_TOL):
                return entry.parts
        return None


def _sum_points(parts: Sequence[Point]) -> Point:
    if all(isinstance(x, Fraction) for p in parts for x in p):
        return tuple(sum(coords, Fraction(0)) for coords in zip(*parts))
    return tuple(float(sum(float(x) for x in coords)) for coords in zip(*parts))


def minkowski_vertex_decomposition(polys: Sequence[Polytope]) -> VertexDecomposition:
    """Enumerate the vertices of ``P_1 + ... + P_k`` with their decompositions.

    A tuple of summand vertices is a sum vertex iff some weight is strictly
    minimized by each chosen vertex on its own summand; the LP maximizes
    the margin and accepts it above 1e-9.

    Args:
        polys: Summand polytopes sharing one ambient dimension.

    Returns:
        The decomposition; `borderline` lists tuples whose margin fell in
        the unstable band.
    """
    if not polys:
        raise ValueError("Need at least one polytope")
    dim = polys[0].ambient_dim
    if any(p.ambient_dim != dim for p in polys):
        raise ValueError("All polytopes must share the ambient dimension")
    arrays = [p.as_array() for p in polys]

    entries: list[SumVertex] = []
    borderline: list[tuple[int, ...]] = []
    for combo in itertools.product(*[range(len(p.vertices)) for p in polys]):
        diffs = [np.delete(arr, i, axis=0) - arr[i] for arr, i in zip(arrays, combo)]
        slack, weight = separation_slack(diffs, dim)
        if BORDERLINE_BAND[0] <= slack <= BORDERLINE_BAND[1]:
            borderline.append(tuple(combo))
        if slack <= SLACK_TOL:
            continue
        parts = tuple(p.vertices[i] for p, i in zip(polys, combo))
        point = _sum_points(parts)
        point_arr = np.asarray([float(x) for x in point])
        if any(np.linalg.norm(point_arr - np.asarray([float(x) for x in e.point]))
               <= MERGE_TOL for e in entries):
            continue
        entries.append(SumVertex(
            point=point,
            parts=parts,
            part_indices=tuple(combo),
            weight=tuple(float(x) for x in weight),
            slack=float(slack),
        ))
    return VertexDecomposition(tuple(entries), dim, tuple(borderline))


def minkowski_sum(polys: Sequence[Polytope]) -> Polytope:
    """The sum polytope, vertices taken from the decomposition."""
    decomposition = minkowski_vertex_decomposition(polys)
    vertices = tuple(e.point for e in decomposition.entries)
    return Polytope(vertices, decomposition.ambient_dim, affine_dimension(vertices))


def fan_cover_check(polys: Sequence[Polytope], samples: int = 10_000,
                    seed: int = 0, tol: float = BOUNDARY_TOL) -> bool:
    """Sample the normal fan of the Minkowski sum with random directions.

    Each normal cone is rebuilt from its cdd generators, so the check also
    exercises the generator representation. A direction must land in at least
    one cone, and whenever it lands in several, it must sit within `tol`
    of the boundary of all but one of them.

    Args:
        polys: Summand polytopes.
        samples: Number of Gaussian directions.
        seed: Seed of the direction generator.
        tol: Relative boundary tolerance.

    Returns:
        True if the cones cover the directions as a fan should.

    Raises:
        DegenerateFanError: If the sum is not full-dimensional.
    """
    total = minkowski_sum(polys)
    n = total.ambient_dim
    if total.affine_dim < n:
        raise DegenerateFanError(
            f"Minkowski sum has dimension {total.affine_dim} < {n}"
        )
    rng = np.random.default_rng(seed)
    directions = rng.standard_normal((samples, n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)

    margins = []
    for vertex in total.vertices:
        cone = normal_cone(total, vertex)
        normals = generators_to_halfspaces(cone.as_array(), n)
        if len(normals) == 0:
            margins.append(np.full(samples, np.inf))
            continue
        margins.append(np.min(directions @ normals.T, axis=1))
    margins = np.array(margins)

    inside = margins >= -tol
    hits = inside.sum(axis=0)
    if np.any(hits == 0):
        return False
    interior = (margins > tol).sum(axis=0)
    return bool(np.all(interior <= 1))
