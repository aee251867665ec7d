"""Closed-form bounds and reference values for the expected number of zeros.

Gamma function ratios are evaluated through `scipy.special.gammaln`, so the
formulas stay finite for large n and t.
"""

import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

__all__ = [
    "log_projective_volume",
    "projective_volume",
    "rho",
    "rho_product",
    "bound_mixed",
    "bound_unmixed",
    "bound_betc_unmixed",
    "bound_jindal",
    "mvr_product_identity",
    "product_form_bound",
    "kushnirenko_reference",
    "conjecture_reference_scale",
]


def log_projective_volume(n: int) -> float:
    """``log vol(P^n) = log(pi^{(n+1)/2} / Gamma((n+1)/2))``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return 0.5 * (n + 1) * math.log(math.pi) - float(gammaln(0.5 * (n + 1)))


def projective_volume(n: int) -> float:
    """Volume of real projective n-space, half the volume of the unit n-sphere."""
    return math.exp(log_projective_volume(n))


def rho(n: int) -> float:
    """Mean norm of a standard Gaussian vector in R^n."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return math.sqrt(2.0) * math.exp(float(gammaln(0.5 * (n + 1)) - gammaln(0.5 * n)))


def rho_product(n: int) -> float:
    """``rho(n) * rho(n - 1) * ... * rho(1)``, the mean of ``|det|`` of a Gaussian matrix."""
    return math.exp(sum(math.log(rho(k)) for k in range(1, n + 1)))


def _log_binomial(a: int, b: int) -> float:
    return float(gammaln(a + 1) - gammaln(b + 1) - gammaln(a - b + 1))


def _check_counts(t: Sequence[int]) -> None:
    if any(x < 1 for x in t):
        raise ValueError(f"Support sizes must be positive, got {list(t)}")


def bound_mixed(n: int, t: Sequence[int], v0: int) -> float:
    """``(2 pi)^{-n/2} V_0 (t_1 - 1) ... (t_n - 1)``.

    Args:
        n: Number of variables.
        t: The n support sizes.
        v0: Number of vertices of the Minkowski sum of the Newton polytopes.
    """
    _check_counts(t)
    if len(t) != n:
        raise ValueError(f"Expected {n} support sizes, got {len(t)}")
    if v0 < 1:
        raise ValueError(f"V0 must be positive, got {v0}")
    if any(x == 1 for x in t):
        return 0.0
    log_value = -0.5 * n * math.log(2.0 * math.pi) + math.log(v0) \
        + sum(math.log(x - 1) for x in t)
    return math.exp(log_value)


def bound_unmixed(n: int, t: int, v0: int) -> float:
    """``V_0 C(t - 1, n) / vol(P^n)`` for n equations sharing one support of size t."""
    _check_counts([t])
    if v0 < 1:
        raise ValueError(f"V0 must be positive, got {v0}")
    if t - 1 < n:
        return 0.0
    return math.exp(math.log(v0) + _log_binomial(t - 1, n) - log_projective_volume(n))


def bound_betc_unmixed(n: int, t: int) -> float:
    """``2^{1-n} C(t, n)``, the earlier unmixed bound."""
    _check_counts([t])
    if t < n:
        return 0.0
    return math.exp((1 - n) * math.log(2.0) + _log_binomial(t, n))


def bound_jindal(t: int) -> float:
    """``(2 / pi) sqrt(t - 1)``, the univariate bound."""
    _check_counts([t])
    return 2.0 / math.pi * math.sqrt(t - 1)


def mvr_product_identity(expectations: Sequence[float]) -> float:
    """``pi^n vol(P^n)^{-1} E(S_1) ... E(S_n)`` for a product support S_1 x ... x S_n."""
    n = len(expectations)
    if n < 1:
        raise ValueError("At least one factor expectation is required")
    if any(e < 0 for e in expectations):
        raise ValueError("Expectations must be nonnegative")
    if any(e == 0 for e in expectations):
        return 0.0
    return math.exp(n * math.log(math.pi) - log_projective_volume(n)
                    + sum(math.log(e) for e in expectations))


def product_form_bound(n: int, t: int) -> float:
    """``2^n sqrt(t) / vol(P^n)`` for a product support of total size t."""
    _check_counts([t])
    return math.exp(n * math.log(2.0) + 0.5 * math.log(t) - log_projective_volume(n))


def kushnirenko_reference(t: Sequence[int]) -> float:
    """``(t_1 - 1) ... (t_n - 1)``; a reference scale, not a bound."""
    _check_counts(t)
    return float(np.prod([x - 1 for x in t], dtype=float))


def conjecture_reference_scale(t: Sequence[int]) -> float:
    """``sqrt(t_1 ... t_n)``, the conjectured growth without its unknown constant."""
    _check_counts(t)
    return math.exp(0.5 * sum(math.log(x) for x in t))
