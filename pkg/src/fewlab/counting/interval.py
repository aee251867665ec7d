"""Vectorized interval enclosures of exponential sums over boxes.

Boxes are arrays ``lo, hi`` of shape (B, n); bounds may be infinite for
the exclusion test. Every computed bound is widened outward by a few units
in the last place, so enclosures stay valid under floating-point rounding.

Two tests are provided:

* `exclusion_mask`: each equation is divided by the sum of all its
  exponentials, turning it into ``sum_a c(a) q_a(w)`` with softmax weights
  ``q_a`` in [0, 1]. The weights are enclosed through the ranges of
  ``<b - a, w>``, which stay meaningful on unbounded boxes.
* `krawczyk`: the Krawczyk operator in midpoint-radius form on a slightly
  inflated box. Containment in the interior proves a unique zero there;
  disjointness proves there is none.
"""

import numpy as np

__all__ = [
    "EPS",
    "UNDECIDED",
    "NO_ZERO",
    "UNIQUE_ZERO",
    "pairwise_ranges",
    "weight_ranges",
    "exclusion_mask",
    "krawczyk",
]


EPS = np.finfo(float).eps
UNDECIDED = 0
NO_ZERO = 1
UNIQUE_ZERO = 2


def _down(x: np.ndarray, size: np.ndarray, ops: int) -> np.ndarray:
    return np.nextafter(x - ops * EPS * size, -np.inf)


def _up(x: np.ndarray, size: np.ndarray, ops: int) -> np.ndarray:
    return np.nextafter(x + ops * EPS * size, np.inf)


def pairwise_ranges(exps: np.ndarray, lo: np.ndarray,
                    hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ranges of ``<b - a, w>`` over each box, shape (B, t, t) each.

    Entry ``[k, a, b]`` bounds ``<exps[b] - exps[a], w>`` on box k.
    """
    diffs = exps[None, :, :] - exps[:, None, :]
    pos = np.maximum(diffs, 0.0)[None]
    neg = np.minimum(diffs, 0.0)[None]
    lo_b = lo[:, None, None, :]
    hi_b = hi[:, None, None, :]
    with np.errstate(invalid="ignore"):
        low_terms = np.where(pos > 0, pos * lo_b, 0.0) + np.where(neg < 0, neg * hi_b, 0.0)
        high_terms = np.where(pos > 0, pos * hi_b, 0.0) + np.where(neg < 0, neg * lo_b, 0.0)
    n = exps.shape[1]
    low = _down(low_terms.sum(-1), np.abs(low_terms).sum(-1), n + 1)
    high = _up(high_terms.sum(-1), np.abs(high_terms).sum(-1), n + 1)
    return low, high


def weight_ranges(exps: np.ndarray, lo: np.ndarray,
                  hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Enclosures of the softmax weights ``q_a``, shape (B, t) each."""
    low, high = pairwise_ranges(exps, lo, hi)
    t = exps.shape[0]
    with np.errstate(over="ignore"):
        q_lo = 1.0 / np.exp(high).sum(-1)
        q_hi = 1.0 / np.exp(low).sum(-1)
    q_lo = np.maximum(q_lo * (1.0 - 4 * (t + 2) * EPS), 0.0)
    q_hi = np.minimum(q_hi * (1.0 + 4 * (t + 2) * EPS), 1.0)
    return q_lo, q_hi


def exclusion_mask(exponents, coefficients, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Boxes on which some equation provably has no zero.

    Args:
        exponents: Per-equation exponent arrays (t_i, n).
        coefficients: Per-equation coefficient arrays (t_i,).
        lo: Lower box corners (B, n), possibly ``-inf``.
        hi: Upper box corners (B, n), possibly ``inf``.

    Returns:
        Boolean array (B,), True where the box is free of zeros.
    """
    excluded = np.zeros(len(lo), dtype=bool)
    for exps, coefs in zip(exponents, coefficients):
        q_lo, q_hi = weight_ranges(exps, lo, hi)
        a = coefs * q_lo
        b = coefs * q_hi
        size = (np.abs(coefs) * q_hi).sum(-1)
        t = len(coefs)
        g_lo = _down(np.minimum(a, b).sum(-1), size, t + 1)
        g_hi = _up(np.maximum(a, b).sum(-1), size, t + 1)
        excluded |= (g_lo > 0) | (g_hi < 0)
    return excluded


def krawczyk(exponents, coefficients, lo: np.ndarray, hi: np.ndarray,
             inflate: float = 0.01) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Krawczyk test on bounded boxes inflated by a relative margin.

    Each equation is scaled by ``exp(-max_a <a, mid>)``, which does not move
    its zeros.

    Returns:
        ``(status, lo_inflated, hi_inflated)``; status is one of
        `UNDECIDED`, `NO_ZERO`, `UNIQUE_ZERO` and refers to the inflated box.
    """
    mid = 0.5 * (lo + hi)
    rad = 0.5 * (hi - lo) * (1.0 + inflate)
    rad = np.maximum(rad, 4 * EPS * np.maximum(np.abs(mid), 1.0))
    count, n = mid.shape
    value = np.empty((count, n))
    value_err = np.empty((count, n))
    jac_mid = np.empty((count, n, n))
    jac_center = np.empty((count, n, n))
    jac_rad = np.empty((count, n, n))
    for i, (exps, coefs) in enumerate(zip(exponents, coefficients)):
        t = len(coefs)
        center = mid @ exps.T
        spread = rad @ np.abs(exps).T
        spread = spread + 4 * n * EPS * (np.abs(center) + spread)
        base = center - center.max(axis=1, keepdims=True)
        with np.errstate(over="ignore"):
            e_mid = np.exp(base)
            e_lo = np.exp(base - spread)
            e_hi = np.exp(base + spread)
        weighted = coefs[:, None] * exps
        abs_weighted = np.abs(weighted)
        value[:, i] = e_mid @ coefs
        value_err[:, i] = 4 * (t + n + 2) * EPS * (e_mid @ np.abs(coefs)
                                                 + (np.abs(center) * e_mid) @ np.abs(coefs))
        jac_mid[:, i, :] = e_mid @ weighted
        jac_center[:, i, :] = 0.5 * (e_lo + e_hi) @ weighted
        jac_rad[:, i, :] = 0.5 * (e_hi - e_lo) @ abs_weighted \
            + 4 * (t + 2) * EPS * (e_hi @ abs_weighted)

    norms = np.prod(np.linalg.norm(jac_mid, axis=2), axis=1)
    det = np.linalg.det(jac_mid)
    usable = np.isfinite(det) & (np.abs(det) > 1e-14 * norms) & np.all(np.isfinite(jac_rad), axis=(1, 2))
    eye = np.broadcast_to(np.eye(n), jac_mid.shape)
    precond = np.linalg.inv(np.where(usable[:, None, None], jac_mid, eye))
    abs_precond = np.abs(precond)

    step = np.einsum("bij,bj->bi", precond, value)
    residual = np.eye(n)[None] - precond @ jac_center
    residual_rad = abs_precond @ jac_rad
    k_center = mid - step
    k_rad = np.einsum("bij,bj->bi", abs_precond, value_err) \
        + np.einsum("bij,bj->bi", np.abs(residual) + residual_rad, rad)
    k_rad = k_rad + 4 * (n + 2) * EPS * (
        np.abs(mid) + np.abs(step) + np.einsum("bij,bj->bi", abs_precond, np.abs(value))
        + np.einsum("bij,bj->bi", np.abs(residual), rad))

    offset = np.abs(k_center - mid)
    inside = usable & np.all(offset + k_rad < rad, axis=1)
    disjoint = usable & np.any(offset - k_rad > rad, axis=1)
    status = np.full(count, UNDECIDED)
    status[disjoint] = NO_ZERO
    status[inside] = UNIQUE_ZERO
    return status, mid - rad, mid + rad
