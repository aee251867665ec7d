"""Integration of the kinematic integrand over R^n.

The integral is truncated to the cube ``[-R, R]^n``. Outside the ball of
radius R, hence outside the cube, each cone of the normal fan contributes
at most ``2^n exp(-delta R / 2)`` per row selection (`dominant_tail_bound`),
and R is the smallest radius making the sum of these terms fall below the
tail tolerance.

Inside the cube:

* one variable: the exact integrand, adaptive Gauss-Kronrod on graded cells;
* two or three variables: a tensor Gauss-Legendre rule on graded cells,
  with the Gaussian forms shared by all nodes. The quadrature error is
  estimated by a rule of lower order on the same cells;
* more variables, or on request: plain Monte Carlo in the cube.
"""

import itertools
import math
from dataclasses import asdict, dataclass, fields, replace
from functools import lru_cache
from typing import Any, Sequence

import numpy as np
from scipy.integrate import quad

from ..core.errors import ConfigError, DegenerateFanError
from ..counting.exclusion import dominance_geometry
from ..geometry.support import Support
from ..utils.parallel import ordered_map
from .integrand import draw_forms, integrand_samples, is_degenerate, point_chunk

__all__ = [
    "DET_TOL",
    "METHODS",
    "QuadratureOptions",
    "KinematicEstimate",
    "dominant_tail_bound",
    "truncation_radius",
    "axis_edges",
    "axis_rule",
    "expected_zeros_kinematic",
    "RadiusDoubling",
    "radius_doubling_check",
]


DET_TOL = 1e-12
METHODS = ("product", "monte-carlo")


@dataclass(frozen=True)
class QuadratureOptions:
    """Tunables of the kinematic estimator.

    Attributes:
        lambda_samples: Gaussian draws shared by all quadrature nodes.
        order: Gauss-Legendre nodes per cell and axis; the error estimate
            uses ``order - 2``.
        inner_width: Width of the two cells next to the origin. None uses
            half the inverse of the widest support diameter.
        growth: Ratio between the widths of consecutive cells.
        tail_tol: Target for the analytic tail bound.
        max_radius: Largest truncation radius.
        radius: Fixed truncation radius; None selects it from `tail_tol`.
        method: ``"product"`` or ``"monte-carlo"``.
        mc_points: Points of the Monte Carlo rule.
        epsabs: Absolute tolerance of the one-variable rule per cell.
        workers: Processes evaluating node chunks.
    """

    lambda_samples: int = 512
    order: int = 8
    inner_width: float | None = None
    growth: float = 1.5
    tail_tol: float = 1e-4
    max_radius: float = 200.0
    radius: float | None = None
    method: str = "product"
    mc_points: int = 20_000
    epsabs: float = 1e-9
    workers: int = 1

    def __post_init__(self):
        if self.lambda_samples < 2:
            raise ConfigError(f"lambda_samples must be at least 2, got {self.lambda_samples}")
        if self.order < 3:
            raise ConfigError(f"order must be at least 3, got {self.order}")
        if self.inner_width is not None and not self.inner_width > 0:
            raise ConfigError(f"inner_width must be positive, got {self.inner_width}")
        if not self.growth >= 1.0:
            raise ConfigError(f"growth must be at least 1, got {self.growth}")
        for name in ("tail_tol", "max_radius", "epsabs"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.radius is not None and not self.radius > 0:
            raise ConfigError(f"radius must be positive, got {self.radius}")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.mc_points < 2 or self.workers < 1:
            raise ConfigError("mc_points must be at least 2 and workers at least 1")

    def to_json(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict[str, Any] | None) -> "QuadratureOptions":
        """Build options from a JSON object; missing keys take defaults."""
        if not obj:
            return cls()
        unknown = set(obj) - {f.name for f in fields(cls)}
        if unknown:
            raise ConfigError(f"Unknown quadrature options: {sorted(unknown)}")
        return cls(**obj)


@dataclass(frozen=True)
class KinematicEstimate:
    """Estimate of the expected number of zeros.

    Attributes:
        value: The estimate.
        std_error: Monte Carlo standard error from the Gaussian draws.
        quadrature_error: Estimated discretization error.
        tail_bound: Bound on the integral outside the truncation cube.
        radius: Half-width of the truncation cube.
        method: ``"exact-1d"``, ``"product"``, ``"monte-carlo"`` or
            ``"degenerate"``.
        nodes: Number of integrand evaluation points.
    """

    value: float
    std_error: float
    quadrature_error: float
    tail_bound: float
    radius: float
    method: str
    nodes: int

    @property
    def combined_error(self) -> float:
        return math.hypot(self.std_error, self.quadrature_error) + self.tail_bound

    def to_json(self) -> dict[str, Any]:
        out = asdict(self)
        out["combined_error"] = self.combined_error
        return out


@lru_cache(maxsize=256)
def _decay_rates(supports: tuple[Support, ...]) -> tuple[float, ...]:
    """Least value of ``<b_1 + ... + b_n, y>`` on unit rays, per cone and selection."""
    try:
        cones = dominance_geometry(supports)
    except DegenerateFanError:
        return ()
    arrays = [s.as_array() for s in supports]
    rates = []
    for cone in cones:
        shifted = [np.delete(arr, i, axis=0) - arr[i] for arr, i in zip(arrays, cone.parts)]
        for rows in itertools.product(*shifted):
            mat = np.array(rows)
            if abs(float(np.linalg.det(mat))) <= DET_TOL:
                continue
            rates.append(float(np.min(cone.rays @ mat.sum(axis=0))))
    return tuple(rates)


def dominant_tail_bound(supports: Sequence[Support], radius: float) -> float:
    """Bound on the integral of the integrand outside the ball of a radius.

    Returns:
        ``(2 pi)^{-n/2} sum 2^n exp(-delta R / 2)`` over cones and row
        selections with nonzero determinant; ``inf`` if some rate is not
        positive.
    """
    rates = _decay_rates(tuple(supports))
    n = len(supports)
    if any(rate <= 0 for rate in rates):
        return math.inf
    total = sum(math.exp(-0.5 * rate * radius) for rate in rates)
    return (2.0 * math.pi) ** (-n / 2) * 2.0 ** n * total


def truncation_radius(supports: Sequence[Support], opts: QuadratureOptions) -> float:
    """The smallest radius whose tail bound meets `opts.tail_tol`, capped."""
    if opts.radius is not None:
        return opts.radius
    if dominant_tail_bound(supports, opts.max_radius) > opts.tail_tol:
        return opts.max_radius
    lo, hi = 0.0, opts.max_radius
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if dominant_tail_bound(supports, mid) > opts.tail_tol:
            lo = mid
        else:
            hi = mid
    return hi


def axis_edges(radius: float, inner: float, growth: float) -> np.ndarray:
    """Cell edges on ``[-radius, radius]``, symmetric and widening outward."""
    edges = [0.0]
    width = inner
    while edges[-1] < radius:
        edges.append(min(radius, edges[-1] + width))
        width *= growth
    positive = np.array(edges)
    return np.concatenate([-positive[:0:-1], positive])


def axis_rule(edges: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on the cells."""
    x, w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def _inner_width(supports: Sequence[Support], opts: QuadratureOptions) -> float:
    if opts.inner_width is not None:
        return opts.inner_width
    diameter = 0.0
    for s in supports:
        arr = s.as_array()
        diameter = max(diameter, float(np.max(np.linalg.norm(arr[:, None] - arr[None], axis=2))))
    return 0.5 / diameter if diameter > 0 else 1.0


def _weighted_sums(task) -> np.ndarray:
    """Sum of ``weight * integrand`` over one chunk of the tensor grid, per draw."""
    exponents, forms, nodes, weights, n, start, stop = task
    idx = np.unravel_index(np.arange(start, stop), (len(nodes),) * n)
    points = np.column_stack([nodes[i] for i in idx])
    node_weights = np.prod([weights[i] for i in idx], axis=0)
    return node_weights @ integrand_samples(exponents, forms, points)


def _product_rule(exponents, forms, edges, order, n, chunk, workers) -> tuple[np.ndarray, int]:
    nodes, weights = axis_rule(edges, order)
    total = len(nodes) ** n
    tasks = [(exponents, forms, nodes, weights, n, start, min(total, start + chunk))
             for start in range(0, total, chunk)]
    partial = ordered_map(_weighted_sums, tasks, workers=workers, chunksize=1)
    return np.sum(partial, axis=0), total


def _one_variable(supports, radius, opts) -> KinematicEstimate:
    exps = supports[0].as_array()

    def density(w: float) -> float:
        return float(integrand_samples([exps], [], np.array([[w]]))[0, 0])

    edges = axis_edges(radius, _inner_width(supports, opts), opts.growth)
    value = 0.0
    error = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        piece, err = quad(density, a, b, epsabs=opts.epsabs, limit=200)
        value += piece
        error += err
    return KinematicEstimate(value, 0.0, error, dominant_tail_bound(supports, radius),
                             radius, "exact-1d", len(edges) - 1)


def _monte_carlo(supports, radius, opts, seed) -> KinematicEstimate:
    n = len(supports)
    exponents = [s.as_array() for s in supports]
    rng = np.random.default_rng(seed)
    points = rng.uniform(-radius, radius, size=(opts.mc_points, n))
    forms = draw_forms(supports, opts.lambda_samples, seed + 1)
    chunk = point_chunk(supports, opts.lambda_samples)
    row_means = []
    column_sums = np.zeros(opts.lambda_samples)
    for start in range(0, len(points), chunk):
        values = integrand_samples(exponents, forms, points[start:start + chunk])
        row_means.append(values.mean(axis=1))
        column_sums += values.sum(axis=0)
    volume = (2.0 * radius) ** n
    rows = np.concatenate(row_means)
    columns = column_sums / len(points)
    value = volume * float(rows.mean())
    std_error = volume * math.sqrt(float(rows.var(ddof=1)) / len(rows)
                                   + float(columns.var(ddof=1)) / len(columns))
    return KinematicEstimate(value, std_error, 0.0, dominant_tail_bound(supports, radius),
                             radius, "monte-carlo", len(points))


def expected_zeros_kinematic(supports: Sequence[Support],
                             quad_opts: QuadratureOptions | None = None,
                             seed: int = 0) -> KinematicEstimate:
    """Expected number of zeros of the Gaussian system with these supports.

    Args:
        supports: The n supports.
        quad_opts: Quadrature options.
        seed: Seed of the Gaussian draws.

    Returns:
        The estimate; exactly 0 when the integrand vanishes identically.
    """
    opts = quad_opts or QuadratureOptions()
    supports = tuple(supports)
    n = len(supports)
    if is_degenerate(supports):
        return KinematicEstimate(0.0, 0.0, 0.0, 0.0, 0.0, "degenerate", 0)
    radius = truncation_radius(supports, opts)
    if n == 1:
        return _one_variable(supports, radius, opts)
    if opts.method == "monte-carlo" or n > 3:
        return _monte_carlo(supports, radius, opts, seed)

    exponents = [s.as_array() for s in supports]
    forms = draw_forms(supports, opts.lambda_samples, seed)
    edges = axis_edges(radius, _inner_width(supports, opts), opts.growth)
    chunk = point_chunk(supports, opts.lambda_samples)
    fine, nodes = _product_rule(exponents, forms, edges, opts.order, n, chunk, opts.workers)
    coarse, _ = _product_rule(exponents, forms, edges, opts.order - 2, n, chunk, opts.workers)
    value = float(fine.mean())
    std_error = float(fine.std(ddof=1) / math.sqrt(len(fine)))
    return KinematicEstimate(value, std_error, abs(value - float(coarse.mean())),
                             dominant_tail_bound(supports, radius), radius, "product", nodes)


@dataclass(frozen=True)
class RadiusDoubling:
    """Estimates at a truncation radius and at twice that radius."""

    radius: float
    at_radius: KinematicEstimate
    at_double: KinematicEstimate

    @property
    def difference(self) -> float:
        return abs(self.at_double.value - self.at_radius.value)

    @property
    def consistent(self) -> bool:
        """Whether the two estimates agree within three combined errors."""
        scale = self.at_radius.combined_error + self.at_double.combined_error
        return self.difference <= 3.0 * scale


def radius_doubling_check(supports: Sequence[Support],
                          quad_opts: QuadratureOptions | None = None,
                          seed: int = 0) -> RadiusDoubling:
    """Rerun the estimator with the truncation radius doubled."""
    opts = quad_opts or QuadratureOptions()
    radius = truncation_radius(supports, opts) if not is_degenerate(supports) else 1.0
    first = expected_zeros_kinematic(supports, replace(opts, radius=radius), seed)
    second = expected_zeros_kinematic(supports, replace(opts, radius=2.0 * radius), seed)
    return RadiusDoubling(radius, first, second)
