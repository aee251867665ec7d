"""Options and results of zero counting."""

import math
from dataclasses import asdict, dataclass, fields
from typing import Any

from ..core.errors import ConfigError

__all__ = [
    "CountOptions",
    "CountResult",
]


@dataclass(frozen=True)
class CountOptions:
    """Tunables of the zero counters.

    Attributes:
        box_radius: Half-width of the search box [-R, R]^n. None selects
            the dominance radius of each system automatically.
        max_depth: Maximum number of subdivisions of one box.
        newton_tol: Step size at which Newton refinement stops.
        degeneracy_tol: Zeros whose Jacobian determinant, relative to the
            product of its row norms, is at most this are degenerate.
        max_radius: Automatic radii above this, or infinite ones, make the
            counter search all of R^n with unbounded boxes instead.
        max_boxes: Budget of processed boxes per system.
        certify_n3: Whether three-variable counts may be reported as
            certified.
    """

    box_radius: float | None = None
    max_depth: int = 48
    newton_tol: float = 1e-12
    degeneracy_tol: float = 1e-10
    max_radius: float = 60.0
    max_boxes: int = 400_000
    certify_n3: bool = False

    def __post_init__(self):
        if self.box_radius is not None and not self.box_radius > 0:
            raise ConfigError(f"box_radius must be positive, got {self.box_radius}")
        if self.max_depth < 1:
            raise ConfigError(f"max_depth must be positive, got {self.max_depth}")
        for name in ("newton_tol", "degeneracy_tol", "max_radius"):
            value = getattr(self, name)
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        if self.max_boxes < 1:
            raise ConfigError(f"max_boxes must be positive, got {self.max_boxes}")

    @property
    def box_radius_policy(self) -> str:
        """Either ``"auto"`` or ``"fixed"``."""
        return "auto" if self.box_radius is None else "fixed"

    def to_json(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict[str, Any] | None) -> "CountOptions":
        """Build options from a JSON object; missing keys take defaults.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        if not obj:
            return cls()
        known = {f.name for f in fields(cls)}
        unknown = set(obj) - known
        if unknown:
            raise ConfigError(f"Unknown count options: {sorted(unknown)}")
        return cls(**obj)


@dataclass(frozen=True)
class CountResult:
    """Zeros of one system in exponential coordinates.

    Attributes:
        count: Number of nondegenerate zeros found.
        certified: Whether the count is proven, up to outward rounding.
        zeros: The refined zeros, sorted.
        discarded_degenerate: Whether the sample hit a tangential zero or
            an unresolved box and should be left out of estimators.
        max_zero_norm: Largest Euclidean norm among the zeros, 0 if none.
        search_radius: Half-width of the searched box; ``inf`` for R^n.
    """

    count: int
    certified: bool
    zeros: tuple[tuple[float, ...], ...] = ()
    discarded_degenerate: bool = False
    max_zero_norm: float = 0.0
    search_radius: float = math.inf

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")
        if self.certified and self.count != len(self.zeros):
            raise ValueError("A certified count must list its zeros")
        expected = max((math.hypot(*z) for z in self.zeros), default=0.0)
        if not math.isclose(self.max_zero_norm, expected, rel_tol=1e-12, abs_tol=1e-300):
            raise ValueError("max_zero_norm does not match the zeros")

    @classmethod
    def from_zeros(cls, zeros, certified: bool, discarded_degenerate: bool = False,
                   search_radius: float = math.inf) -> "CountResult":
        """Assemble a result, sorting zeros and deriving the norm statistic."""
        ordered = tuple(sorted(tuple(float(x) for x in z) for z in zeros))
        return cls(
            count=len(ordered),
            certified=certified,
            zeros=ordered,
            discarded_degenerate=discarded_degenerate,
            max_zero_norm=max((math.hypot(*z) for z in ordered), default=0.0),
            search_radius=search_radius,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "certified": self.certified,
            "zeros": [list(z) for z in self.zeros],
            "discarded_degenerate": self.discarded_degenerate,
            "max_zero_norm": self.max_zero_norm,
            "search_radius": None if math.isinf(self.search_radius) else self.search_radius,
        }
