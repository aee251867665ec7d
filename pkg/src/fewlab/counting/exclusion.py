"""A radius outside of which a system has no zeros.

With ``x = exp(w)``, the normal fan of the Minkowski sum splits R^n into
cones ``-C_v``, one per vertex v of the sum. Deep inside ``-C_v`` each
equation is dominated by the term of its summand vertex ``v_i``. Writing
``L_i = log(sum_{a != v_i} |c_i(a)| / |c_i(v_i)|)``, the point ``w = -y``
with y in C_v is no zero as soon as ``<a - v_i, y> > L_i`` for every
``a != v_i`` in some equation i.

The geometric part, a lower bound ``gap_v`` for
``min_{|y| = 1} max_i min_a <a - v_i, y>`` over every choice of the a's,
depends only on the supports and is cached. Each system then costs one
pass over its coefficients: ``R_v = max_i L_i / gap_v``.
"""

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from ..core.errors import DegenerateFanError
from ..fewnomial.system import FewnomialSystem
from ..fewnomial.transforms import sum_polytope_dimension
from ..geometry.minkowski import minkowski_vertex_decomposition
from ..geometry.polytope import Polytope, hull_vertices, normal_cone
from ..geometry.support import Support

__all__ = [
    "GAP_TOL",
    "RADIUS_SAFETY",
    "DominanceCone",
    "dominance_geometry",
    "exclusion_radius",
]


GAP_TOL = 1e-12
RADIUS_SAFETY = 1.0 + 1e-9


@dataclass(frozen=True)
class DominanceCone:
    """Geometry of one cone of the normal fan.

    Attributes:
        parts: For each equation, the index of ``v_i`` among its support
            points.
        rays: Unit extreme rays of C_v, shape (m, n).
        gap: Lower bound of the directional gap; 0 when every equation
            can tie along some ray.
    """

    parts: tuple[int, ...]
    rays: np.ndarray
    gap: float


def _prune_dominated(values: np.ndarray) -> list[int]:
    """Columns not dominated entrywise by another column (smaller is better)."""
    keep: list[int] = []
    k = values.shape[1]
    for a in range(k):
        dominated = False
        for b in range(k):
            if b == a:
                continue
            if np.all(values[:, b] <= values[:, a]) and \
                    (np.any(values[:, b] < values[:, a]) or b < a):
                dominated = True
                break
        if not dominated:
            keep.append(a)
    return keep


def _tuple_gap(columns: Sequence[np.ndarray]) -> float:
    """``min_{lambda in simplex} max_i <column_i, lambda>`` via HiGHS."""
    m = len(columns[0])
    c = np.zeros(m + 1)
    c[-1] = 1.0
    a_ub = np.array([np.append(col, -1.0) for col in columns])
    a_eq = np.append(np.ones(m), 0.0)[None, :]
    res = linprog(c, A_ub=a_ub, b_ub=np.zeros(len(columns)), A_eq=a_eq, b_eq=[1.0],
                  bounds=[(0, None)] * m + [(None, None)], method="highs")
    if res.status != 0:
        return 0.0
    return max(0.0, float(res.fun))


@lru_cache(maxsize=256)
def dominance_geometry(supports: tuple[Support, ...]) -> tuple[DominanceCone, ...]:
    """Per-cone geometry of the normal fan of ``conv(A_1) + ... + conv(A_n)``.

    Raises:
        DegenerateFanError: If the sum is not full-dimensional.
    """
    n = len(supports)
    dim = sum_polytope_dimension(supports)
    if dim < n:
        raise DegenerateFanError(
            f"Sum polytope has dimension {dim} < {n}; the system has no nondegenerate zeros"
        )
    polys = [hull_vertices(s) for s in supports]
    decomposition = minkowski_vertex_decomposition(polys)
    total = Polytope(tuple(e.point for e in decomposition.entries), n, n)
    arrays = [s.as_array() for s in supports]

    cones = []
    for entry in decomposition.entries:
        rays = normal_cone(total, entry.point).as_array()
        parts = tuple(s.points.index(p) for s, p in zip(supports, entry.parts))
        candidates = []
        for arr, i in zip(arrays, parts):
            others = np.delete(arr, i, axis=0) - arr[i]
            values = rays @ others.T
            candidates.append([values[:, j] for j in _prune_dominated(values)])
        gap = math.inf
        if all(candidates):
            for columns in itertools.product(*candidates):
                gap = min(gap, _tuple_gap(columns))
                if gap <= GAP_TOL:
                    gap = 0.0
                    break
        cones.append(DominanceCone(parts, rays, gap))
    return tuple(cones)


def _log_ratio(coeffs: np.ndarray, dominant: int) -> float:
    lead = abs(coeffs[dominant])
    rest = float(np.abs(np.delete(coeffs, dominant)).sum())
    if rest == 0.0:
        return -math.inf
    if lead == 0.0:
        return math.inf
    return math.log(rest / lead)


def exclusion_radius(system: FewnomialSystem) -> float:
    """Radius R with no zeros of the system at ``|w| > R``.

    Args:
        system: The system.

    Returns:
        A finite radius, 0 when a single equation dominates everywhere,
        or ``inf`` when some cone allows all equations to tie.

    Raises:
        DegenerateFanError: If the sum polytope is not full-dimensional.
    """
    cones = dominance_geometry(tuple(system.supports))
    if any(len(s) == 1 for s in system.supports):
        return 0.0
    coeffs = system.coefficient_arrays
    radius = 0.0
    for cone in cones:
        logs = [_log_ratio(c, i) for c, i in zip(coeffs, cone.parts)]
        if min(logs) < 0:
            continue
        largest = max(logs)
        if largest == 0.0:
            continue
        if cone.gap == 0.0 or math.isinf(largest):
            return math.inf
        radius = max(radius, largest / cone.gap)
    return radius * RADIUS_SAFETY
