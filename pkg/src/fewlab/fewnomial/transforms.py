"""Support transformations that preserve zero counts.

Shifting ``A_i`` by ``b_i`` multiplies ``F_i`` by ``exp(<b_i, w>)`` and keeps
the zero set. Applying ``g`` in GL(n) to all supports maps zeros by
``w -> g^{-T} w``. Coefficients stay attached to their support index.
"""

from fractions import Fraction
from typing import Sequence

import numpy as np

from ..geometry.lp import exact_rank
from ..geometry.support import Support, normalize_points
from .system import FewnomialSystem

__all__ = [
    "SINGULAR_TOL",
    "translate_support",
    "gl_transform",
    "gl_zero_map",
    "scale_coordinates",
    "stretch",
    "sum_polytope_dimension",
]


SINGULAR_TOL = 1e-12


def _is_rational(values) -> bool:
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool)
               for x in values)


def _shift(support: Support, shift: Sequence) -> Support:
    if support.exact and _is_rational(shift):
        b = [Fraction(x) for x in shift]
        return Support.of([[a + s for a, s in zip(p, b)] for p in support.points],
                          support.dim)
    arr = support.as_array() + np.asarray(shift, dtype=float)
    return Support.of(arr.tolist(), support.dim)


def _linear_image(support: Support, g: Sequence[Sequence]) -> Support:
    if support.exact and all(_is_rational(row) for row in g):
        mat = [[Fraction(x) for x in row] for row in g]
        points = [[sum((mij * aj for mij, aj in zip(row, p)), Fraction(0)) for row in mat]
                  for p in support.points]
        return Support.of(points, support.dim)
    arr = support.as_array() @ np.asarray(g, dtype=float).T
    return Support.of(arr.tolist(), support.dim)


def _check_invertible(g: Sequence[Sequence], n: int) -> None:
    rows = [list(row) for row in g]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"Transformation must be {n}x{n}")
    if all(_is_rational(r) for r in rows):
        if exact_rank([[Fraction(x) for x in r] for r in rows]) < n:
            raise ValueError("Transformation is singular")
        return
    mat = np.asarray(rows, dtype=float)
    if np.linalg.cond(mat) > 1.0 / SINGULAR_TOL:
        raise ValueError("Transformation is singular")


def translate_support(system: FewnomialSystem,
                      shifts: Sequence[Sequence]) -> FewnomialSystem:
    """Replace every ``A_i`` by ``A_i + b_i``, keeping coefficients by index.

    Args:
        system: The system.
        shifts: One shift vector per equation.

    Returns:
        A system with the same zeros.
    """
    if len(shifts) != system.n:
        raise ValueError(f"Need {system.n} shifts, got {len(shifts)}")
    supports = tuple(_shift(s, b) for s, b in zip(system.supports, shifts))
    return FewnomialSystem(supports, system.coeffs, system.seed)


def gl_transform(system: FewnomialSystem, g: Sequence[Sequence]) -> FewnomialSystem:
    """Replace every ``A_i`` by ``g(A_i)``.

    Zeros move by ``w -> g^{-T} w``; see `gl_zero_map`.

    Raises:
        ValueError: If `g` is singular.
    """
    _check_invertible(g, system.n)
    supports = tuple(_linear_image(s, g) for s in system.supports)
    return FewnomialSystem(supports, system.coeffs, system.seed)


def gl_zero_map(g: Sequence[Sequence], w: np.ndarray) -> np.ndarray:
    """Image ``g^{-T} w`` of zeros (rows of `w`) under `gl_transform`."""
    mat = np.asarray(g, dtype=float)
    return np.linalg.solve(mat.T, np.atleast_2d(w).T).T.reshape(np.shape(w))


def scale_coordinates(system: FewnomialSystem,
                      factors: Sequence) -> FewnomialSystem:
    """Scale the j-th exponent coordinate by ``factors[j]`` in all supports.

    In monomial terms this substitutes ``x_j -> x_j^{factors[j]}``.
    """
    n = system.n
    if len(factors) != n:
        raise ValueError(f"Need {n} factors, got {len(factors)}")
    zero = 0 if _is_rational(factors) else 0.0
    g = [[factors[i] if i == j else zero for j in range(n)] for i in range(n)]
    return gl_transform(system, g)


def stretch(system: FewnomialSystem, m) -> FewnomialSystem:
    """Replace every support A_i by ``m A_i``, coefficients unchanged."""
    return scale_coordinates(system, [m] * system.n)


def sum_polytope_dimension(supports: Sequence[Support]) -> int:
    """Dimension of ``conv(A_1) + ... + conv(A_n)``.

    It is the rank of all edge directions ``a - a_0`` taken together.
    """
    diffs = []
    for s in supports:
        base = s.points[0]
        diffs += [[x - y for x, y in zip(p, base)] for p in s.points[1:]]
    if not diffs:
        return 0
    rows = normalize_points(diffs)
    if all(isinstance(x, Fraction) for r in rows for x in r):
        return exact_rank(rows)
    arr = np.asarray(rows, dtype=float)
    return int(np.linalg.matrix_rank(arr, tol=1e-9 * max(1.0, np.max(np.abs(arr)))))
