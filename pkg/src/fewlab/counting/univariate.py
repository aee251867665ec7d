"""Univariate exponential sums: certified zero counting and expected counts.

A sum ``g(w) = sum_k c_k exp(a_k w)`` with t terms has a derivative that,
after dividing by ``exp(a_min w)``, is again a sum with t - 1 terms. Its
zeros split the line into pieces on which g is monotone, so every piece
holds at most one zero, found by a sign change. This gives at most t - 1
zeros.
"""

import math
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import softmax

from ..geometry.support import Support
from .count_options import CountOptions, CountResult

__all__ = [
    "count_univariate",
    "ek_density",
    "ek_expected_univariate",
]


_MAX_EXPANSIONS = 2000
_POLISH_STEPS = 3


def _scaled(exps: np.ndarray, coefs: np.ndarray, w: float) -> tuple[float, float]:
    """``g(w) exp(-M)`` and the matching sum of absolute terms."""
    e = exps * w
    terms = coefs * np.exp(e - e.max())
    return float(terms.sum()), float(np.abs(terms).sum())


def _limit_sign(coefs: np.ndarray, toward_plus: bool) -> float:
    # Exponents are sorted ascending.
    return float(np.sign(coefs[-1] if toward_plus else coefs[0]))


def _expand(exps, coefs, start: float, direction: float, target: float) -> float:
    """Walk geometrically from `start` until g has sign `target`."""
    step = 1.0
    for _ in range(_MAX_EXPANSIONS):
        x = start + direction * step
        value, _ = _scaled(exps, coefs, x)
        if np.sign(value) == target:
            return x
        step *= 2.0
    raise ArithmeticError("Could not bracket a zero of an exponential sum")


def _polish(exps, coefs, root: float, lo: float, hi: float) -> float:
    """A few Newton steps, kept only while they stay in the bracket and help."""
    best, best_value = root, abs(_scaled(exps, coefs, root)[0])
    w = root
    for _ in range(_POLISH_STEPS):
        e = exps * w
        weights = np.exp(e - e.max())
        value = float((coefs * weights).sum())
        slope = float((coefs * exps * weights).sum())
        if slope == 0.0:
            break
        w = w - value / slope
        if not lo <= w <= hi:
            break
        new_value = abs(_scaled(exps, coefs, w)[0])
        if new_value >= best_value:
            break
        best, best_value = w, new_value
    return best


def _real_roots(exps: np.ndarray, coefs: np.ndarray,
                opts: CountOptions) -> tuple[list[float], list[float], bool]:
    """Zeros of ``sum_k c_k exp(a_k w)``.

    Returns:
        ``(roots, tangents, degenerate)``: the simple zeros, the critical
        points where the sum nearly vanishes, and whether any zero is
        tangential.
    """
    keep = coefs != 0
    exps, coefs = exps[keep], coefs[keep]
    if len(exps) == 0:
        return [], [], True
    if len(exps) == 1:
        return [], [], False
    order = np.argsort(exps, kind="stable")
    exps, coefs = exps[order], coefs[order]

    shifted = exps - exps[0]
    crit, crit_tangents, _ = _real_roots(shifted[1:], coefs[1:] * shifted[1:], opts)
    splits = sorted(set(crit) | set(crit_tangents))

    tol = opts.degeneracy_tol

    def sign_at(p: float) -> float:
        if p == -math.inf:
            return _limit_sign(coefs, toward_plus=False)
        if p == math.inf:
            return _limit_sign(coefs, toward_plus=True)
        value, size = _scaled(exps, coefs, p)
        return 0.0 if abs(value) <= tol * size else float(np.sign(value))

    roots: list[float] = []
    tangents: list[float] = []
    degenerate = False
    points = [-math.inf, *splits, math.inf]
    signs = [sign_at(p) for p in points]
    for p, s in zip(points[1:-1], signs[1:-1]):
        if s == 0.0:
            tangents.append(p)
            degenerate = True

    for lo, hi, s_lo, s_hi in zip(points, points[1:], signs, signs[1:]):
        if s_lo * s_hi >= 0:
            continue
        a = lo if math.isfinite(lo) else _expand(
            exps, coefs, hi if math.isfinite(hi) else 0.0, -1.0, s_lo)
        b = hi if math.isfinite(hi) else _expand(
            exps, coefs, a if math.isfinite(lo) else max(a, 0.0), 1.0, s_hi)
        root = brentq(lambda w: _scaled(exps, coefs, w)[0], a, b,
                      xtol=opts.newton_tol, rtol=4 * np.finfo(float).eps, maxiter=500)
        root = _polish(exps, coefs, root, a, b)
        e = exps * root
        weights = np.exp(e - e.max())
        slope = abs(float((coefs * shifted * weights).sum()))
        size = float((np.abs(coefs * shifted) * weights).sum())
        if slope <= tol * size:
            degenerate = True
        roots.append(float(root))
    return roots, tangents, degenerate


def count_univariate(support: Support, coeffs: Sequence[float],
                     opts: CountOptions | None = None) -> CountResult:
    """Count the real zeros of ``sum_a c(a) exp(a w)``, certified.

    Args:
        support: A support in R^1.
        coeffs: One coefficient per support point.
        opts: Counting options; only the tolerances are used.

    Returns:
        The zeros in increasing order. Tangential zeros set
        `discarded_degenerate` and clear `certified`.
    """
    if support.dim != 1:
        raise ValueError(f"Expected a support in R^1, got R^{support.dim}")
    if len(coeffs) != len(support):
        raise ValueError("One coefficient per support point is required")
    opts = opts or CountOptions()
    exps = support.as_array()[:, 0]
    coefs = np.asarray(coeffs, dtype=float)
    roots, _, degenerate = _real_roots(exps, coefs, opts)
    return CountResult.from_zeros([(r,) for r in roots], certified=not degenerate,
                                  discarded_degenerate=degenerate)


def ek_density(support: Support, w: float | np.ndarray) -> np.ndarray:
    """Expected zero density ``(1/pi) sqrt(H''(2w))`` of a Gaussian sum.

    ``H(s) = log sum_a exp(a s)``, so ``H''(s)`` is the variance of the
    exponents under the weights ``softmax(a s)``.
    """
    exps = support.as_array()[:, 0]
    w = np.atleast_1d(np.asarray(w, dtype=float))
    weights = softmax(2.0 * w[:, None] * exps[None, :], axis=1)
    mean = weights @ exps
    var = np.einsum("kt,kt->k", weights, (exps[None, :] - mean[:, None]) ** 2)
    return np.sqrt(np.maximum(var, 0.0)) / math.pi


def ek_expected_univariate(support: Support, epsabs: float = 1e-6) -> float:
    """Expected number of real zeros for i.i.d. standard Gaussian coefficients.

    The density is integrated over R piecewise, with breakpoints at the
    scales set by the gaps between exponents.

    Args:
        support: A support in R^1.
        epsabs: Absolute tolerance of the whole integral.

    Returns:
        The expectation; 0 for a single exponent.
    """
    if support.dim != 1:
        raise ValueError(f"Expected a support in R^1, got R^{support.dim}")
    if len(support) <= 1:
        return 0.0
    exps = np.sort(support.as_array()[:, 0])
    # The expectation is invariant under affine changes of the exponents.
    unit = Support.of(((exps - exps[0]) / (exps[-1] - exps[0]))[:, None].tolist())
    gaps = np.diff(np.sort(unit.as_array()[:, 0]))
    breaks = sorted({0.0, *(s / g for g in gaps for s in (-1.0, 1.0))})
    pieces = [(-math.inf, breaks[0]), *zip(breaks, breaks[1:]), (breaks[-1], math.inf)]
    tol = epsabs / len(pieces)

    def density(x: float) -> float:
        return float(ek_density(unit, x)[0])

    total = 0.0
    for lo, hi in pieces:
        value, _ = quad(density, lo, hi, epsabs=tol, epsrel=1e-10, limit=200)
        total += value
    return total
