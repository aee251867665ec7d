"""Numerical checks of identities the kinematic estimator relies on."""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MomentEstimate",
    "gaussian_det_moment",
    "segre_point",
    "segre_derivative",
    "segre_inner_product_deviation",
    "segre_isometry_check",
    "projected_moment_check",
]


@dataclass(frozen=True)
class MomentEstimate:
    """A Monte Carlo mean with its standard error."""

    value: float
    std_error: float
    samples: int

    def within(self, target: float, sigmas: float = 3.0) -> bool:
        return abs(self.value - target) <= sigmas * self.std_error


def gaussian_det_moment(n: int, samples: int = 100_000, seed: int = 0,
                        chunk: int = 65_536) -> MomentEstimate:
    """Mean of ``|det G|`` for an n x n standard Gaussian matrix G."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        dets = np.abs(np.linalg.det(rng.standard_normal((size, n, n))))
        total += float(dets.sum())
        total_sq += float((dets ** 2).sum())
        done += size
    mean = total / samples
    var = max(0.0, (total_sq - samples * mean ** 2) / (samples - 1))
    return MomentEstimate(mean, math.sqrt(var / samples), samples)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def segre_point(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Normalized ``x (x) y`` of normalized representatives."""
    return _unit(np.outer(_unit(x), _unit(y)).ravel())


def segre_derivative(x: np.ndarray, y: np.ndarray, xi: np.ndarray, eta: np.ndarray,
                     h: float = 1e-6) -> np.ndarray:
    """Central difference of the Segre map along the tangent pair ``(xi, eta)``."""
    plus = segre_point(x + h * xi, y + h * eta)
    minus = segre_point(x - h * xi, y - h * eta)
    return (plus - minus) / (2.0 * h)


def segre_inner_product_deviation(x, y, first, second, h: float = 1e-6) -> float:
    """``|<D(xi, eta), D(xi', eta')> - (<xi, xi'> + <eta, eta'>)|`` at unit x, y.

    Args:
        x, y: Unit vectors.
        first, second: Tangent pairs ``(xi, eta)`` with ``xi`` orthogonal to x
            and ``eta`` orthogonal to y.
        h: Difference step.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xi1, eta1 = (np.asarray(v, dtype=float) for v in first)
    xi2, eta2 = (np.asarray(v, dtype=float) for v in second)
    d1 = segre_derivative(x, y, xi1, eta1, h)
    d2 = segre_derivative(x, y, xi2, eta2, h)
    return abs(float(d1 @ d2) - float(xi1 @ xi2 + eta1 @ eta2))


def _tangent(rng: np.random.Generator, base: np.ndarray) -> np.ndarray:
    v = rng.standard_normal(len(base))
    return _unit(v - (v @ base) * base)


def segre_isometry_check(m: int, n: int, samples: int = 16, seed: int = 0,
                         h: float = 1e-6) -> float:
    """Largest inner-product deviation of the Segre map ``P^m x P^n -> P^{mn+m+n}``.

    Tangent pairs are drawn at random points, each pair scaled to unit
    length in the product metric.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = _unit(rng.standard_normal(m + 1))
        y = _unit(rng.standard_normal(n + 1))
        pairs = []
        for _ in range(2):
            xi, eta = _tangent(rng, x), _tangent(rng, y)
            scale = math.sqrt(2.0)
            pairs.append((xi / scale, eta / scale))
        for first in pairs:
            for second in pairs:
                worst = max(worst, segre_inner_product_deviation(x, y, first, second, h))
    return worst


def projected_moment_check(dim: int, samples: int = 50_000, seed: int = 0,
                           trials: int = 8) -> MomentEstimate:
    """Largest component second moment of ``z = A g`` with ``|A| <= 1``.

    Each trial draws an orthogonal projector onto a random subspace,
    composes it with a random diagonal contraction and applies it to
    standard Gaussian vectors g. Every component of z has second moment at
    most 1; the largest estimate over components and trials is returned.
    """
    if dim < 1:
        raise ValueError(f"dim must be positive, got {dim}")
    rng = np.random.default_rng(seed)
    worst = MomentEstimate(-math.inf, 0.0, samples)
    for _ in range(trials):
        rank = int(rng.integers(1, dim + 1))
        basis, _ = np.linalg.qr(rng.standard_normal((dim, rank)))
        operator = (basis @ basis.T) * rng.uniform(-1.0, 1.0, size=dim)
        z = rng.standard_normal((samples, dim)) @ operator.T
        squares = z ** 2
        means = squares.mean(axis=0)
        j = int(np.argmax(means))
        if means[j] > worst.value:
            err = float(squares[:, j].std(ddof=1) / math.sqrt(samples))
            worst = MomentEstimate(float(means[j]), err, samples)
    return worst
