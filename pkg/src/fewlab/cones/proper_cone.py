"""Proper polyhedral cones and their duals.

A cone is proper when it is full-dimensional and pointed. Cones are kept as
generator lists; halfspace forms are derived with pycddlib on demand.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np
from scipy.optimize import linprog, nnls

from ..geometry.cdd_utils import generators_to_halfspaces
from ..geometry.polytope import Cone

__all__ = [
    "RANK_TOL",
    "ProperCone",
    "dual_cone",
]


RANK_TOL = 1e-10


@dataclass(frozen=True)
class ProperCone:
    """A full-dimensional pointed cone spanned by generators.

    Attributes:
        generators: Generator vectors, not necessarily extreme or normalized.
        ambient_dim: Dimension n.
    """

    generators: tuple[tuple[float, ...], ...]
    ambient_dim: int

    def __post_init__(self):
        gens = self.as_array()
        if len(gens) == 0:
            raise ValueError("A proper cone needs generators")
        if gens.shape[1] != self.ambient_dim:
            raise ValueError(f"Generators must lie in R^{self.ambient_dim}")
        if np.any(np.linalg.norm(gens, axis=1) == 0.0):
            raise ValueError("Generators must be nonzero")
        if np.linalg.matrix_rank(gens, tol=RANK_TOL * np.max(np.abs(gens))) < self.ambient_dim:
            raise ValueError("Generators do not span the ambient space")
        if self.interior_functional() is None:
            raise ValueError("Cone is not pointed")

    @classmethod
    def of(cls, generators: Sequence[Sequence[float]]) -> "ProperCone":
        """Build a cone from raw vectors, inferring the dimension."""
        gens = tuple(tuple(float(x) for x in g) for g in generators)
        if not gens:
            raise ValueError("A proper cone needs generators")
        return cls(gens, len(gens[0]))

    @classmethod
    def from_cone(cls, cone: Cone) -> "ProperCone":
        """Promote a geometry `Cone`, e.g. a normal cone of a full polytope."""
        if not cone.pointed:
            raise ValueError("Cone has a lineality space")
        return cls(tuple(tuple(g) for g in cone.generators), cone.ambient_dim)

    @classmethod
    def orthant(cls, n: int) -> "ProperCone":
        return cls.of(np.eye(n))

    def as_array(self) -> np.ndarray:
        """Generators as a (k, n) float array."""
        return np.asarray(self.generators, dtype=float).reshape(len(self.generators), -1)

    @property
    def simplicial(self) -> bool:
        """Whether the cone has exactly n generators (then independent)."""
        return len(self.generators) == self.ambient_dim

    def interior_functional(self) -> np.ndarray | None:
        """A unit vector u with ``<u, g> > 0`` for every generator, or None.

        Solves ``G u >= 1`` with HiGHS; feasibility is equivalent to the cone
        being pointed.
        """
        gens = self.as_array()
        n = gens.shape[1]
        res = linprog(np.zeros(n), A_ub=-gens, b_ub=-np.ones(len(gens)),
                      bounds=[(None, None)] * n, method="highs")
        if res.status != 0:
            return None
        u = np.asarray(res.x, dtype=float)
        return u / np.linalg.norm(u)

    @cached_property
    def extreme_generators(self) -> np.ndarray:
        """Generators with redundant and repeated directions removed."""
        gens = self.as_array()
        units = gens / np.linalg.norm(gens, axis=1, keepdims=True)
        kept: list[int] = []
        for i in range(len(units)):
            if any(np.allclose(units[i], units[j], atol=1e-12) for j in kept):
                continue
            others = np.delete(units, i, axis=0)
            if len(others):
                _, residual = nnls(others.T, units[i])
                if residual <= 1e-10:
                    continue
            kept.append(i)
        return gens[kept]

    @cached_property
    def halfspaces(self) -> np.ndarray:
        """Inner normals N with ``C = {y : N y >= 0}``."""
        return generators_to_halfspaces(self.as_array(), self.ambient_dim)

    def contains(self, y: Sequence[float], tol: float = 1e-9) -> bool:
        y = np.asarray(y, dtype=float)
        scale = np.linalg.norm(self.halfspaces, axis=1) * max(np.linalg.norm(y), 1e-300)
        return bool(np.all(self.halfspaces @ y >= -tol * scale))

    def to_json(self) -> dict[str, Any]:
        return {"dim": self.ambient_dim,
                "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "ProperCone":
        try:
            return cls(tuple(tuple(float(x) for x in g) for g in obj["generators"]),
                       int(obj["dim"]))
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed cone JSON: {obj!r}") from e


def dual_cone(cone: ProperCone) -> ProperCone:
    """The dual cone ``{x : <x, y> >= 0 for all y in C}``.

    For a simplicial cone the generators are the dual basis, so that
    ``<b*_i, b_j> = delta_ij``. Other cones go through the halfspace form.

    Args:
        cone: A proper cone.

    Returns:
        The dual, again proper.
    """
    gens = cone.extreme_generators
    n = cone.ambient_dim
    if len(gens) == n:
        return ProperCone.of(np.linalg.inv(gens).T)
    return ProperCone.of(generators_to_halfspaces(gens, n))
