"""Linear-programming helpers shared by the geometry routines.

Exact rational supports go through cddlib's GMP arithmetic (``cdd.gmp``), so
vertex questions about integer exponent sets are answered without rounding.
Float supports use scipy's HiGHS solver and a residual check.
"""

from fractions import Fraction
from typing import Sequence

import cdd
import cdd.gmp
import numpy as np
from scipy.optimize import linprog

__all__ = [
    "FEASIBILITY_TOL",
    "exact_feasible",
    "exact_rank",
    "exact_in_hull",
    "float_in_hull",
    "separation_slack",
]


FEASIBILITY_TOL = 1e-9


def exact_feasible(a_eq: Sequence[Sequence[Fraction]],
                   b_eq: Sequence[Fraction]) -> bool:
    """Decide whether ``A x = b, x >= 0`` has a solution, in exact arithmetic.

    The system is handed to cdd as an H-representation: equality rows
    ``[-b_i, A_i]`` in the linearity set and sign rows ``[0, e_j]``, with a
    zero objective.

    Args:
        a_eq: The m x k constraint matrix.
        b_eq: The right-hand side of length m.

    Returns:
        True if the system is feasible.
    """
    m = len(a_eq)
    if m == 0:
        return True
    k = len(a_eq[0])
    rows = [[-Fraction(b_eq[i]), *(Fraction(x) for x in a_eq[i])] for i in range(m)]
    rows += [[Fraction(0)] + [Fraction(int(j == i)) for j in range(k)] for i in range(k)]
    mat = cdd.gmp.matrix_from_array(
        rows,
        lin_set=set(range(m)),
        rep_type=cdd.RepType.INEQUALITY,
        obj_type=cdd.LPObjType.MAX,
        obj_func=[Fraction(0)] * (k + 1),
    )
    lp = cdd.gmp.linprog_from_matrix(mat)
    cdd.gmp.linprog_solve(lp)
    return lp.status == cdd.LPStatusType.OPTIMAL


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix, computed by cdd in exact arithmetic."""
    matrix = [[Fraction(0), *(Fraction(x) for x in row)] for row in rows]
    if not matrix or len(matrix[0]) == 1:
        return 0
    # Column 0 is a zero column, so it never adds to the rank.
    _, _, rank = cdd.gmp.matrix_rank(cdd.gmp.matrix_from_array(matrix))
    return int(rank)


def exact_in_hull(point: Sequence[Fraction],
                  others: Sequence[Sequence[Fraction]]) -> bool:
    """Whether `point` lies in the convex hull of `others`, exactly."""
    if not others:
        return False
    dim = len(point)
    a_eq = [[q[d] for q in others] for d in range(dim)]
    a_eq.append([Fraction(1)] * len(others))
    b_eq = list(point) + [Fraction(1)]
    return exact_feasible(a_eq, b_eq)


def float_in_hull(point: np.ndarray, others: np.ndarray,
                  tol: float = FEASIBILITY_TOL) -> bool:
    """Whether `point` lies in the convex hull of the rows of `others`.

    Uses HiGHS and then verifies the residual of the returned weights.
    """
    if len(others) == 0:
        return False
    k = len(others)
    a_eq = np.vstack([others.T, np.ones((1, k))])
    b_eq = np.concatenate([point, [1.0]])
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq,
                  bounds=[(0, None)] * k, method="highs")
    if res.status != 0 or res.x is None:
        return False
    residual = np.max(np.abs(a_eq @ res.x - b_eq))
    scale = max(1.0, float(np.max(np.abs(others))), float(np.max(np.abs(point))))
    return bool(residual <= tol * scale)


def separation_slack(differences: Sequence[np.ndarray],
                     dim: int) -> tuple[float, np.ndarray]:
    """Largest s with ``<d, w> >= s`` for all rows d, over w in the unit box.

    The slack is capped at 1. A positive value means some direction w makes
    every difference strictly positive.

    Args:
        differences: Arrays of shape (k_i, dim) to be separated from zero.
        dim: Ambient dimension.

    Returns:
        The optimal slack and a weight w attaining it. The slack is ``inf``
        when there is nothing to separate.
    """
    stacked = [d for d in differences if len(d)]
    if not stacked:
        return float("inf"), np.zeros(dim)
    diffs = np.vstack(stacked)
    # Variables (w_1..w_n, s); minimize -s subject to -<d, w> + s <= 0.
    c = np.zeros(dim + 1)
    c[-1] = -1.0
    a_ub = np.hstack([-diffs, np.ones((len(diffs), 1))])
    b_ub = np.zeros(len(diffs))
    bounds = [(-1.0, 1.0)] * dim + [(None, 1.0)]
    res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status != 0:
        return float("-inf"), np.zeros(dim)
    return float(-res.fun), np.asarray(res.x[:dim], dtype=float)
