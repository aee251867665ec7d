"""Experiment configuration and support generators.

Configuration JSON example ::

{
  "experiment": "mixed-bound-sweep",
  "samples": 2000,
  "seed": 11,
  "configurations": 30,
  "supports": {"kind": "random-integer", "n": 2, "min_size": 2, "max_size": 5, "box": 6},
  "count": {"degeneracy_tol": 1e-10},
  "quadrature": {"lambda_samples": 256},
  "params": {"kinematic_configurations": 10}
}

Missing fields take the dataclass defaults. `params` holds the knobs of
the chosen experiment; each catalog routine documents the keys it reads.
"""

import json
from dataclasses import dataclass, field, fields
from typing import Any

import numpy as np

from ..core.errors import ConfigError, DegenerateFanError
from ..counting.count_options import CountOptions
from ..counting.exclusion import dominance_geometry
from ..fewnomial.transforms import sum_polytope_dimension
from ..geometry.support import Support
from ..kinematic.quadrature import QuadratureOptions

__all__ = [
    "EXPERIMENT_NAMES",
    "SUPPORT_KINDS",
    "MAX_TRIES",
    "SupportSpec",
    "segment_supports",
    "product_supports",
    "in_general_position",
    "random_integer_supports",
    "ExperimentConfig",
]


EXPERIMENT_NAMES = (
    "example-2n",
    "jindal-sweep",
    "ek-vs-counting",
    "mixed-bound-sweep",
    "mvr-product",
    "unmixed-compare",
    "concentration",
    "cone-identities",
    "invariance",
)
SUPPORT_KINDS = ("explicit", "random-integer", "product", "segments")
MAX_TRIES = 1000


def _unknown_keys(cls, obj: dict[str, Any], what: str) -> None:
    unknown = set(obj) - {f.name for f in fields(cls)}
    if unknown:
        raise ConfigError(f"Unknown {what} fields: {sorted(unknown)}")


@dataclass(frozen=True)
class SupportSpec:
    """How the supports of a configuration are obtained.

    Attributes:
        kind: One of ``"explicit"``, ``"random-integer"``, ``"product"``
            or ``"segments"``.
        n: Number of variables (random-integer, segments).
        sizes: Fixed support sizes; overrides `min_size`/`max_size`.
        min_size: Smallest random support size.
        max_size: Largest random support size.
        box: Random exponents are integers in ``[0, box]^n``.
        points: Explicit supports, one point list per equation.
        factors: Univariate factors of a product support shared by all
            equations.
        general_position: Reject random supports whose normal fan lets
            every equation tie along a ray.
    """

    kind: str = "random-integer"
    n: int = 2
    sizes: tuple[int, ...] | None = None
    min_size: int = 2
    max_size: int = 5
    box: int = 6
    points: tuple | None = None
    factors: tuple | None = None
    general_position: bool = True

    def __post_init__(self):
        if self.kind not in SUPPORT_KINDS:
            raise ConfigError(f"Support kind must be one of {SUPPORT_KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")
        if not 1 <= self.min_size <= self.max_size:
            raise ConfigError("Support sizes need 1 <= min_size <= max_size")
        if self.box < 1:
            raise ConfigError(f"box must be positive, got {self.box}")
        if self.sizes is not None and (len(self.sizes) != self.n or min(self.sizes) < 1):
            raise ConfigError(f"sizes must hold {self.n} positive entries")
        if self.kind == "explicit" and not self.points:
            raise ConfigError("Explicit supports need points")
        if self.kind == "product" and not self.factors:
            raise ConfigError("Product supports need factors")

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "SupportSpec":
        _unknown_keys(cls, obj, "support")
        obj = dict(obj)
        for key in ("sizes", "points", "factors"):
            if obj.get(key) is not None:
                obj[key] = _freeze(obj[key])
        if obj.get("kind") == "explicit" and "n" not in obj and obj.get("points"):
            obj["n"] = len(obj["points"])
        if obj.get("kind") == "product" and "n" not in obj and obj.get("factors"):
            obj["n"] = len(obj["factors"])
        return cls(**obj)

    def to_json(self) -> dict[str, Any]:
        return {f.name: _thaw(getattr(self, f.name)) for f in fields(self)}

    def build(self, rng: np.random.Generator) -> tuple[Support, ...]:
        """Produce the supports; only random kinds consume `rng`."""
        match self.kind:
            case "explicit":
                return tuple(Support.of(p) for p in self.points)
            case "product":
                return product_supports(self.factors)
            case "segments":
                return segment_supports(self.n)
            case _:
                return random_integer_supports(self, rng)


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def segment_supports(n: int) -> tuple[Support, ...]:
    """``A_i = {0, e_i}``."""
    return tuple(Support.of([[0] * n, [int(i == j) for j in range(n)]]) for i in range(n))


def product_supports(factors) -> tuple[Support, ...]:
    """n copies of ``S_1 x ... x S_n``."""
    grids = np.meshgrid(*[list(f) for f in factors], indexing="ij")
    points = np.column_stack([g.ravel() for g in grids]).tolist()
    support = Support.of(points)
    return tuple(support for _ in factors)


def in_general_position(supports: tuple[Support, ...]) -> bool:
    """Whether the sum is full-dimensional and no cone of its fan has a tie."""
    n = len(supports)
    if sum_polytope_dimension(supports) < n:
        return False
    if n == 1:
        return True
    try:
        return all(cone.gap > 0 for cone in dominance_geometry(supports))
    except DegenerateFanError:
        return False


def random_integer_supports(spec: SupportSpec, rng: np.random.Generator) -> tuple[Support, ...]:
    """Distinct integer points in ``[0, box]^n`` for every equation.

    Raises:
        ConfigError: If no acceptable supports turn up.
    """
    n = spec.n
    cells = (spec.box + 1) ** n
    for _ in range(MAX_TRIES):
        sizes = spec.sizes or tuple(int(rng.integers(spec.min_size, spec.max_size + 1))
                                    for _ in range(n))
        if max(sizes) > cells:
            raise ConfigError(f"Cannot place {max(sizes)} points in a box with {cells} cells")
        supports = []
        for t in sizes:
            idx = rng.choice(cells, size=t, replace=False)
            pts = np.column_stack(np.unravel_index(np.sort(idx), (spec.box + 1,) * n))
            supports.append(Support.of(pts.tolist()))
        supports = tuple(supports)
        if not spec.general_position or in_general_position(supports):
            return supports
    raise ConfigError(f"No supports in general position after {MAX_TRIES} tries")


@dataclass(frozen=True)
class ExperimentConfig:
    """A run of one catalog experiment.

    Attributes:
        experiment: Catalog name.
        samples: Gaussian samples per configuration.
        seed: Master seed; None defers to the command line or environment.
        workers: Worker processes; None defers to the command line, then 1.
        output_dir: Report directory; None defers to the command line, then
            ``./out``.
        configurations: Number of support configurations, for experiments
            that draw several.
        supports: Support generator; None selects the experiment default.
        count: Zero counting options.
        quadrature: Kinematic estimator options.
        plots: Whether SVG plots are written.
        params: Experiment-specific knobs.
    """

    experiment: str
    samples: int = 1000
    seed: int | None = None
    workers: int | None = None
    output_dir: str | None = None
    configurations: int | None = None
    supports: SupportSpec | None = None
    count: CountOptions = field(default_factory=CountOptions)
    quadrature: QuadratureOptions = field(default_factory=QuadratureOptions)
    plots: bool = True
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.experiment not in EXPERIMENT_NAMES:
            raise ConfigError(f"Unknown experiment {self.experiment!r}")
        if self.samples < 1:
            raise ConfigError(f"samples must be at least 1, got {self.samples}")
        if self.workers is not None and self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.configurations is not None and self.configurations < 1:
            raise ConfigError(f"configurations must be at least 1, got {self.configurations}")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed}")

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "ExperimentConfig":
        """Parse a configuration object.

        Raises:
            ConfigError: On missing, unknown or invalid fields.
        """
        if not isinstance(obj, dict) or "experiment" not in obj:
            raise ConfigError("A configuration needs an 'experiment' field")
        _unknown_keys(cls, obj, "configuration")
        obj = dict(obj)
        try:
            if obj.get("supports") is not None:
                obj["supports"] = SupportSpec.from_json(obj["supports"])
            obj["count"] = CountOptions.from_json(obj.get("count"))
            obj["quadrature"] = QuadratureOptions.from_json(obj.get("quadrature"))
            return cls(**obj)
        except TypeError as e:
            raise ConfigError(f"Malformed configuration: {e}") from e

    @classmethod
    def load(cls, path: str) -> "ExperimentConfig":
        """Read a configuration file."""
        with open(path, "r", encoding="utf-8") as f:
            return cls.from_json(json.load(f))

    def echo(self) -> dict[str, Any]:
        """The fields that determine the results, for the report."""
        return {
            "experiment": self.experiment,
            "samples": self.samples,
            "seed": self.seed,
            "configurations": self.configurations,
            "supports": None if self.supports is None else self.supports.to_json(),
            "count": self.count.to_json(),
            "quadrature": {k: v for k, v in self.quadrature.to_json().items() if k != "workers"},
            "params": self.params,
        }
