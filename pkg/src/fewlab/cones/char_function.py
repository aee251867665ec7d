"""The characteristic function of a proper cone.

``v_C(x)`` is the integral of ``exp(-<x, y>)`` over C. It is finite exactly
on the interior of the dual cone, homogeneous of degree -n, and equals
``n!`` times the volume of the slice ``{y in C : <x, y> <= 1}``.

Simplicial cones have a closed form; other cones are split into simplicial
pieces; the slice volume gives an independent Monte Carlo estimate.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.linalg import null_space
from scipy.spatial import ConvexHull

from ..core.errors import ConeDomainError
from .proper_cone import ProperCone, dual_cone

__all__ = [
    "INTERIOR_TOL",
    "CRUCIAL_TOL",
    "CharFnMethod",
    "CharFnValue",
    "check_interior",
    "triangulate",
    "char_function",
    "char_function_mc",
    "crucial_inequality",
]


INTERIOR_TOL = 1e-9
CRUCIAL_TOL = 1e-9


class CharFnMethod(Enum):
    """How a characteristic function value was obtained."""

    EXACT_SIMPLICIAL = "exact-simplicial"
    TRIANGULATED = "triangulated"
    MONTE_CARLO = "monte-carlo"


@dataclass(frozen=True)
class CharFnValue:
    """A value of the characteristic function.

    Attributes:
        value: The (estimated) value.
        method: The evaluation method.
        std_error: Standard error; zero for the deterministic methods.
    """

    value: float
    method: CharFnMethod
    std_error: float = 0.0

    def __post_init__(self):
        if self.std_error < 0:
            raise ValueError("Standard error must be nonnegative")
        if self.method is CharFnMethod.MONTE_CARLO:
            if self.value < 0:
                raise ValueError("Estimate must be nonnegative")
        elif not self.value > 0:
            raise ValueError(f"Characteristic function value {self.value} must be positive")


def check_interior(cone: ProperCone, x: Sequence[float]) -> np.ndarray:
    """Validate that `x` is strictly inside the dual cone.

    Raises:
        ConeDomainError: If some generator pairs with `x` at or below the
            relative margin 1e-9.
    """
    x = np.asarray(x, dtype=float)
    gens = cone.as_array()
    pairing = gens @ x
    margin = INTERIOR_TOL * np.linalg.norm(x) * np.linalg.norm(gens, axis=1)
    if not np.all(pairing > margin) or not np.any(x):
        raise ConeDomainError(f"{x.tolist()} is not interior to the dual cone")
    return x


def _simplicial_value(gens: np.ndarray, x: np.ndarray) -> float:
    # v_{g R^n_+}(x) = |det g| v_{R^n_+}(g^T x)
    return float(abs(np.linalg.det(gens)) / np.prod(gens @ x))


def triangulate(cone: ProperCone) -> list[np.ndarray]:
    """Split a cone into simplicial cones with disjoint interiors.

    The cross-section polytope is pulled from its first vertex: each boundary
    facet not containing that vertex spans one simplicial piece with it.

    Returns:
        Generator matrices of shape (n, n), one per piece.
    """
    gens = cone.extreme_generators
    n = cone.ambient_dim
    if len(gens) == n:
        return [gens]
    u = cone.interior_functional()
    section = gens / (gens @ u)[:, None]
    basis = null_space(u[None, :])
    coords = section @ basis
    hull = ConvexHull(coords)
    apex = coords[0]
    pieces = []
    for simplex, equation in zip(hull.simplices, hull.equations):
        if 0 in simplex:
            continue
        if abs(equation[:-1] @ apex + equation[-1]) <= 1e-10:
            continue
        pieces.append(np.vstack([gens[0], gens[simplex]]))
    return pieces


def char_function(cone: ProperCone, x: Sequence[float]) -> CharFnValue:
    """Evaluate ``v_C(x)`` deterministically.

    Args:
        cone: A proper cone.
        x: A point strictly inside the dual cone.

    Returns:
        The exact value for simplicial cones, else the sum over a
        triangulation.

    Raises:
        ConeDomainError: If `x` is not interior to the dual cone.
    """
    x = check_interior(cone, x)
    gens = cone.extreme_generators
    if len(gens) == cone.ambient_dim:
        return CharFnValue(_simplicial_value(gens, x), CharFnMethod.EXACT_SIMPLICIAL)
    total = sum(_simplicial_value(piece, x) for piece in triangulate(cone))
    return CharFnValue(float(total), CharFnMethod.TRIANGULATED)


def char_function_mc(cone: ProperCone, x: Sequence[float], samples: int = 100_000,
                     seed: int = 0, batch: int = 65_536) -> CharFnValue:
    """Estimate ``v_C(x) = n! vol{y in C : <x, y> <= 1}`` by rejection sampling.

    The slice is the simplex-like polytope with vertices 0 and
    ``g / <x, g>``; its coordinate extrema give the bounding box.

    Args:
        cone: A proper cone.
        x: A point strictly inside the dual cone.
        samples: Number of uniform points drawn in the box.
        seed: Seed of the sampler.
        batch: Points drawn per batch.

    Returns:
        The estimate with its binomial standard error.

    Raises:
        ConeDomainError: If `x` is not interior to the dual cone.
    """
    x = check_interior(cone, x)
    if samples <= 0:
        raise ValueError("samples must be positive")
    n = cone.ambient_dim
    gens = cone.extreme_generators
    tips = gens / (gens @ x)[:, None]
    lo = np.minimum(tips.min(axis=0), 0.0)
    hi = np.maximum(tips.max(axis=0), 0.0)
    box_volume = float(np.prod(hi - lo))
    normals = dual_cone(cone).as_array()

    rng = np.random.default_rng(seed)
    accepted = 0
    remaining = samples
    while remaining > 0:
        size = min(batch, remaining)
        y = lo + (hi - lo) * rng.random((size, n))
        inside = (y @ x <= 1.0) & np.all(y @ normals.T >= 0.0, axis=1)
        accepted += int(inside.sum())
        remaining -= size

    p = accepted / samples
    scale = math.factorial(n) * box_volume
    return CharFnValue(scale * p, CharFnMethod.MONTE_CARLO,
                       scale * math.sqrt(p * (1.0 - p) / samples))


def crucial_inequality(cone: ProperCone,
                       b: Sequence[Sequence[float]]) -> tuple[float, bool]:
    """Evaluate ``|det[b_1..b_n]| * v_C(b_1 + ... + b_n)`` against 1.

    Args:
        cone: A proper cone.
        b: n vectors in the dual cone.

    Returns:
        ``(lhs, holds)`` with ``holds = lhs <= 1 + 1e-9``. A singular
        family gives ``(0.0, True)``.

    Raises:
        ConeDomainError: If some b_i is outside the dual cone, or the sum is
            on its boundary while the family is nonsingular.
    """
    mat = np.asarray(b, dtype=float).reshape(-1, cone.ambient_dim)
    if len(mat) != cone.ambient_dim:
        raise ValueError(f"Need {cone.ambient_dim} vectors, got {len(mat)}")
    gens = cone.as_array()
    pairing = mat @ gens.T
    scale = np.linalg.norm(mat, axis=1)[:, None] * np.linalg.norm(gens, axis=1)[None, :]
    if np.any(pairing < -INTERIOR_TOL * scale):
        raise ConeDomainError("Every b_i must lie in the dual cone")
    det = abs(float(np.linalg.det(mat)))
    if det <= 1e-12 * max(float(np.prod(np.linalg.norm(mat, axis=1))), 1e-300):
        return 0.0, True
    lhs = det * char_function(cone, mat.sum(axis=0)).value
    return lhs, bool(lhs <= 1.0 + CRUCIAL_TOL)
