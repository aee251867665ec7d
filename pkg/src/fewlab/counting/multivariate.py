"""Zero counting for systems in two and three variables.

Branch and prune over boxes: a box is dropped when some equation provably
has no zero on it, accepted when the Krawczyk test proves a unique zero,
and split otherwise. The search region is the box of the dominance radius,
or all of R^n, covered by unbounded boxes that split geometrically, when
that radius is infinite or too large.
"""

import math

import numpy as np

from ..fewnomial.system import FewnomialSystem
from ..fewnomial.transforms import sum_polytope_dimension
from .count_options import CountOptions, CountResult
from .exclusion import exclusion_radius
from .interval import UNDECIDED, UNIQUE_ZERO, exclusion_mask, krawczyk
from .univariate import count_univariate

__all__ = [
    "SPLIT_RATIO",
    "SPLIT_OFFSET",
    "BATCH",
    "RADIUS_PAD",
    "NEWTON_STEPS",
    "MERGE_TOL",
    "newton_refine",
    "relative_jacobian_determinant",
    "count_multivariate",
    "count_zeros",
    "grid_zero_oracle",
]


SPLIT_RATIO = 0.4921
SPLIT_OFFSET = 0.0371
BATCH = 4096
RADIUS_PAD = 1e-6
NEWTON_STEPS = 60
MERGE_TOL = 1e-8


def newton_refine(system: FewnomialSystem, start: np.ndarray, lo: np.ndarray,
                  hi: np.ndarray, tol: float) -> np.ndarray | None:
    """Newton's method on the row-scaled system, confined to a box.

    Returns:
        The converged point, or None if an iterate leaves ``[lo, hi]``, the
        Jacobian is singular, or the iteration does not settle.
    """
    w = np.array(start, dtype=float)
    slack = 1e-9 * np.maximum(1.0, np.abs(hi - lo))
    for _ in range(NEWTON_STEPS):
        values, _ = system.eval_scaled(w)
        rows, _ = system.jacobian_scaled(w)
        try:
            step = np.linalg.solve(rows, values)
        except np.linalg.LinAlgError:
            return None
        w = w - step
        if not np.all(np.isfinite(w)) or np.any(w < lo - slack) or np.any(w > hi + slack):
            return None
        if np.linalg.norm(step) <= tol * max(1.0, float(np.linalg.norm(w))):
            return w
    return None


def relative_jacobian_determinant(system: FewnomialSystem, w: np.ndarray) -> float:
    """``|det J(w)|`` divided by the product of the row norms of J(w)."""
    rows, _ = system.jacobian_scaled(w)
    norms = float(np.prod(np.linalg.norm(rows, axis=1)))
    if norms == 0.0:
        return 0.0
    return abs(float(np.linalg.det(rows))) / norms


def _split(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split every box in two along its widest (preferably infinite) side."""
    width = hi - lo
    infinite = ~np.isfinite(width)
    score = np.where(infinite, np.inf, width)
    axis = np.argmax(score, axis=1)
    rows = np.arange(len(lo))
    a = lo[rows, axis]
    b = hi[rows, axis]
    cut = np.where(
        np.isfinite(a) & np.isfinite(b), a + SPLIT_RATIO * (b - a),
        np.where(np.isfinite(a), a + np.maximum(1.0, np.abs(a)),
                 np.where(np.isfinite(b), b - np.maximum(1.0, np.abs(b)), SPLIT_OFFSET)))
    left_hi = hi.copy()
    left_hi[rows, axis] = cut
    right_lo = lo.copy()
    right_lo[rows, axis] = cut
    return np.vstack([lo, right_lo]), np.vstack([left_hi, hi])


def _branch_and_prune(system: FewnomialSystem, lo0: np.ndarray, hi0: np.ndarray,
                      opts: CountOptions) -> tuple[list[np.ndarray], bool, bool]:
    """Search one region.

    Returns:
        ``(zeros, unresolved, degenerate)``.
    """
    exps = system.exponents
    coefs = system.coefficient_arrays
    stack_lo = [lo0[None, :]]
    stack_hi = [hi0[None, :]]
    stack_depth = [np.zeros(1, dtype=int)]
    zeros: list[np.ndarray] = []
    unresolved = False
    degenerate = False
    processed = 0

    while stack_lo:
        lo = np.vstack(stack_lo)
        hi = np.vstack(stack_hi)
        depth = np.concatenate(stack_depth)
        stack_lo, stack_hi, stack_depth = [], [], []
        if len(lo) > BATCH:
            stack_lo.append(lo[BATCH:])
            stack_hi.append(hi[BATCH:])
            stack_depth.append(depth[BATCH:])
            lo, hi, depth = lo[:BATCH], hi[:BATCH], depth[:BATCH]
        processed += len(lo)
        if processed > opts.max_boxes:
            return zeros, True, degenerate

        keep = ~exclusion_mask(exps, coefs, lo, hi)
        lo, hi, depth = lo[keep], hi[keep], depth[keep]
        if len(lo) == 0:
            continue

        status = np.full(len(lo), UNDECIDED)
        bounded = np.all(np.isfinite(lo) & np.isfinite(hi), axis=1)
        big_lo = np.array(lo)
        big_hi = np.array(hi)
        if bounded.any():
            st, k_lo, k_hi = krawczyk(exps, coefs, lo[bounded], hi[bounded])
            status[bounded] = st
            big_lo[bounded] = k_lo
            big_hi[bounded] = k_hi

        for k in np.flatnonzero(status == UNIQUE_ZERO):
            z = newton_refine(system, 0.5 * (lo[k] + hi[k]), big_lo[k], big_hi[k],
                              opts.newton_tol)
            if z is None:
                status[k] = UNDECIDED
                continue
            if np.all(lo[k] <= z) and np.all(z < hi[k]):
                scale = max(1.0, float(np.linalg.norm(z)))
                if not any(np.linalg.norm(z - other) <= MERGE_TOL * scale for other in zeros):
                    zeros.append(z)
                if relative_jacobian_determinant(system, z) <= opts.degeneracy_tol:
                    degenerate = True

        open_boxes = status == UNDECIDED
        exhausted = open_boxes & (depth >= opts.max_depth)
        if exhausted.any():
            unresolved = True
        open_boxes &= ~exhausted
        if open_boxes.any():
            new_lo, new_hi = _split(lo[open_boxes], hi[open_boxes])
            d = depth[open_boxes] + 1
            stack_lo.append(new_lo)
            stack_hi.append(new_hi)
            stack_depth.append(np.concatenate([d, d]))
    return zeros, unresolved, degenerate


def count_multivariate(system: FewnomialSystem,
                       opts: CountOptions | None = None) -> CountResult:
    """Count the zeros of a square system in exponential coordinates.

    One variable is delegated to `count_univariate`. Two variables give a
    certified count when every box resolves; three variables run the same
    search but are reported uncertified unless `opts.certify_n3` is set.

    Args:
        system: A system with n in {1, 2, 3}.
        opts: Counting options.

    Returns:
        The zeros found. A sum polytope of dimension below n yields a
        certified count of 0.
    """
    opts = opts or CountOptions()
    n = system.n
    if n == 1:
        return count_univariate(system.supports[0], system.coeffs[0], opts)
    if n > 3:
        raise ValueError(f"Counting supports at most three variables, got {n}")
    if sum_polytope_dimension(system.supports) < n:
        return CountResult.from_zeros([], certified=True)
    if any(np.count_nonzero(c) <= 1 for c in system.coefficient_arrays):
        return CountResult.from_zeros([], certified=True)

    radius = opts.box_radius if opts.box_radius is not None else exclusion_radius(system)
    if math.isfinite(radius) and (opts.box_radius is not None or radius <= opts.max_radius):
        half = radius * (1.0 + RADIUS_PAD) + RADIUS_PAD
        lo0, hi0 = np.full(n, -half), np.full(n, half)
        search_radius = half
    else:
        lo0, hi0 = np.full(n, -np.inf), np.full(n, np.inf)
        search_radius = math.inf

    zeros, unresolved, degenerate = _branch_and_prune(system, lo0, hi0, opts)
    certified = (n == 2 or opts.certify_n3) and not unresolved
    return CountResult.from_zeros(zeros, certified=certified,
                                  discarded_degenerate=unresolved or degenerate,
                                  search_radius=search_radius)


def count_zeros(system: FewnomialSystem, opts: CountOptions | None = None) -> CountResult:
    """Count zeros of a system of any supported size."""
    return count_multivariate(system, opts)


def grid_zero_oracle(system: FewnomialSystem, radius: float,
                     resolution: int = 600) -> CountResult:
    """Brute-force zeros of a two-variable system on ``[-radius, radius]^2``.

    Cells where both equations change sign seed Newton's method; converged
    points inside the square are merged and counted. The result is never
    certified.
    """
    if system.n != 2:
        raise ValueError("The grid oracle handles two variables only")
    xs = np.linspace(-radius, radius, resolution + 1)
    step = xs[1] - xs[0]
    zeros: list[np.ndarray] = []
    for start in range(0, resolution, 256):
        stop = min(resolution, start + 256)
        gx, gy = np.meshgrid(xs[start:stop + 1], xs, indexing="ij")
        signs = np.sign(system.eval_scaled(np.column_stack([gx.ravel(), gy.ravel()]))[0])
        signs = signs.reshape(gx.shape + (2,))
        corners = np.stack([signs[:-1, :-1], signs[1:, :-1], signs[:-1, 1:], signs[1:, 1:]])
        changes = (corners.max(axis=0) >= 0) & (corners.min(axis=0) <= 0)
        cells = np.argwhere(changes[..., 0] & changes[..., 1])
        for i, j in cells:
            center = np.array([xs[start + i] + step / 2, xs[j] + step / 2])
            z = newton_refine(system, center, center - 3 * step, center + 3 * step, 1e-13)
            if z is None or np.max(np.abs(z)) > radius:
                continue
            scale = max(1.0, float(np.linalg.norm(z)))
            if not any(np.linalg.norm(z - other) <= 1e-7 * scale for other in zeros):
                zeros.append(z)
    return CountResult.from_zeros(zeros, certified=False, search_radius=radius)
