"""The kinematic integrand of the expected zero count.

The expected number of zeros equals the integral over R^n of

    (2 pi)^{-n/2} E |det [lambda_1^T T_1; ...; lambda_n^T T_n]|

with independent standard Gaussian ``lambda_i`` and the tangent blocks
``T_i`` of `tangent.py`. The last Gaussian form is integrated out exactly:
for fixed first n - 1 rows with cofactor vector c, the determinant is
``<lambda_n, T_n c>``, whose absolute mean is ``sqrt(2/pi) |T_n c|``. In
one variable nothing is left to sample.
"""

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..fewnomial.transforms import sum_polytope_dimension
from ..geometry.support import Support
from .tangent import tangent_blocks

__all__ = [
    "HALF_NORMAL_MEAN",
    "POINT_CHUNK_BUDGET",
    "IntegrandEstimate",
    "draw_forms",
    "cofactors",
    "integrand_samples",
    "point_chunk",
    "is_degenerate",
    "integrand",
    "selection_bound",
]


HALF_NORMAL_MEAN = math.sqrt(2.0 / math.pi)
POINT_CHUNK_BUDGET = 1 << 21


@dataclass(frozen=True)
class IntegrandEstimate:
    """Estimated integrand value at one point.

    Attributes:
        value: The estimate, nonnegative.
        std_error: Monte Carlo standard error; 0 when exact.
        lambda_samples: Number of Gaussian draws used.
    """

    value: float
    std_error: float
    lambda_samples: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("Integrand estimate must be nonnegative")


def draw_forms(supports: Sequence[Support], samples: int, seed: int) -> list[np.ndarray]:
    """Gaussian linear forms for the first n - 1 equations, (samples, t_i) each."""
    rng = np.random.default_rng(seed)
    return [rng.standard_normal((samples, len(s))) for s in supports[:-1]]


def cofactors(rows: np.ndarray) -> np.ndarray:
    """Cofactor vectors of (..., n - 1, n) row stacks: ``det [rows; x] = <c, x>``."""
    n = rows.shape[-1]
    if n == 1:
        return np.ones(rows.shape[:-2] + (1,))
    if n == 2:
        return np.stack([-rows[..., 0, 1], rows[..., 0, 0]], axis=-1)
    if n == 3:
        return np.cross(rows[..., 0, :], rows[..., 1, :])
    out = np.empty(rows.shape[:-2] + (n,))
    for j in range(n):
        minor = np.delete(rows, j, axis=-1)
        out[..., j] = (-1) ** (n - 1 + j) * np.linalg.det(minor)
    return out


def integrand_samples(exponents: Sequence[np.ndarray], forms: Sequence[np.ndarray],
                      w: np.ndarray) -> np.ndarray:
    """Per-draw integrand values at points w (k, n), shape (k, samples).

    The (2 pi)^{-n/2} factor is included.
    """
    n = w.shape[1]
    scale = (2.0 * math.pi) ** (-n / 2) * HALF_NORMAL_MEAN
    last = tangent_blocks(exponents[-1], w)
    if n == 1:
        return scale * np.linalg.norm(last[:, :, 0], axis=1)[:, None]
    rows = np.stack([np.einsum("st,ktn->ksn", lam, tangent_blocks(exps, w))
                     for exps, lam in zip(exponents[:-1], forms)], axis=2)
    c = cofactors(rows)
    return scale * np.linalg.norm(np.einsum("ktn,ksn->kst", last, c), axis=2)


def point_chunk(supports: Sequence[Support], samples: int) -> int:
    """Number of points per batch keeping intermediate arrays bounded."""
    n = len(supports)
    widest = max(len(s) for s in supports)
    return max(1, POINT_CHUNK_BUDGET // max(1, samples * widest * n))


def is_degenerate(supports: Sequence[Support]) -> bool:
    """Whether the integrand vanishes identically."""
    return any(len(s) == 1 for s in supports) or \
        sum_polytope_dimension(supports) < len(supports)


def integrand(supports: Sequence[Support], w: Sequence[float],
              lambda_samples: int = 4096, seed: int = 0) -> IntegrandEstimate:
    """Estimate the integrand at one point.

    Args:
        supports: The n supports.
        w: A point of R^n.
        lambda_samples: Gaussian draws for the first n - 1 forms.
        seed: Seed of the draws.

    Returns:
        Mean and standard error; exact for n = 1 and for degenerate sums.
    """
    point = np.asarray(w, dtype=float)[None, :]
    if is_degenerate(supports):
        return IntegrandEstimate(0.0, 0.0, 0)
    exponents = [s.as_array() for s in supports]
    if len(supports) == 1:
        value = float(integrand_samples(exponents, [], point)[0, 0])
        return IntegrandEstimate(value, 0.0, 0)
    forms = draw_forms(supports, lambda_samples, seed)
    values = integrand_samples(exponents, forms, point)[0]
    return IntegrandEstimate(float(values.mean()),
                             float(values.std(ddof=1) / math.sqrt(len(values))),
                             lambda_samples)


def selection_bound(supports: Sequence[Support], w: Sequence[float]) -> float:
    """Row-selection bound on the integrand at w.

    With ``v_i`` the exponent of A_i maximizing ``<a, w>`` and
    ``b_i = a_i - v_i``, the integrand is at most
    ``(2 pi)^{-n/2} sum |det[b_1..b_n]| exp(<b_1 + ... + b_n, w>)`` over all
    selections ``a_i != v_i``.
    """
    point = np.asarray(w, dtype=float)
    n = len(supports)
    shifted = []
    for s in supports:
        exps = s.as_array()
        top = int(np.argmax(exps @ point))
        shifted.append(np.delete(exps, top, axis=0) - exps[top])
    if any(len(b) == 0 for b in shifted):
        return 0.0
    total = 0.0
    for rows in itertools.product(*shifted):
        mat = np.array(rows)
        total += abs(float(np.linalg.det(mat))) * math.exp(float(mat.sum(axis=0) @ point))
    return (2.0 * math.pi) ** (-n / 2) * total
