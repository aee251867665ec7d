"""Finite exponent sets (supports) and their JSON form.

A `Support` stores its points either as exact rationals (`Fraction`) or as
floats. The representation is exact only when every input coordinate is
rational; a single float coordinate switches the whole support to floats.

Support JSON example ::

{"dim": 2, "points": [[0, 0], [1, 0], [[1, 2], 1]]}

where the pair ``[1, 2]`` stands for the rational 1/2.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = [
    "Coordinate",
    "Point",
    "Coordinate",
    "Point",
    "normalize_points",
    "coordinate_to_json",
    "Support",
]


Coordinate = Fraction | float
Point = tuple[Coordinate, ...]


def _coerce(value: Any) -> Coordinate:
    """Convert one JSON or Python coordinate to a Fraction or a float."""
    if isinstance(value, bool):
        raise ValueError(f"Boolean {value!r} is not a coordinate")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"Rational coordinate {value!r} must be [num, den]")
        num, den = value
        if isinstance(num, bool) or isinstance(den, bool) \
                or not isinstance(num, (int, np.integer)) \
                or not isinstance(den, (int, np.integer)):
            raise ValueError(f"Rational coordinate {value!r} needs integers")
        return Fraction(int(num), int(den))
    result = float(value)
    if not np.isfinite(result):
        raise ValueError(f"Coordinate {value!r} is not finite")
    return result


def normalize_points(points: Iterable[Sequence[Any]]) -> tuple[Point, ...]:
    """Coerce raw coordinates and unify the representation of a point list.

    Args:
        points: Iterable of coordinate sequences.

    Returns:
        Tuple of points, all exact or all float.
    """
    coerced = [tuple(_coerce(x) for x in p) for p in points]
    if any(isinstance(x, float) for p in coerced for x in p):
        return tuple(tuple(float(x) for x in p) for p in coerced)
    return tuple(coerced)


def coordinate_to_json(x: Coordinate) -> Any:
    """Serialize a coordinate: integers plainly, rationals as [num, den]."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return [x.numerator, x.denominator]
    return float(x)


@dataclass(frozen=True)
class Support:
    """A finite nonempty set of distinct exponent vectors.

    Attributes:
        points: Ordered exponent vectors; the order is the coefficient index.
        dim: Ambient dimension n.
    """

    points: tuple[Point, ...]
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"Support dimension must be positive, got {self.dim}")
        if len(self.points) == 0:
            raise ValueError("Support must be nonempty")
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(
                    f"Point {p} has length {len(p)}, expected {self.dim}"
                )
        if len(set(self.points)) != len(self.points):
            raise ValueError("Support points must be distinct")

    @classmethod
    def of(cls, points: Iterable[Sequence[Any]],
           dim: int | None = None) -> "Support":
        """Build a support from raw coordinates.

        Args:
            points: Exponent vectors given as ints, floats, Fractions or
                [num, den] pairs.
            dim: Ambient dimension; inferred from the first point if None.

        Returns:
            The validated support.
        """
        pts = normalize_points(points)
        if dim is None:
            if not pts:
                raise ValueError("Cannot infer the dimension of an empty support")
            dim = len(pts[0])
        return cls(pts, dim)

    @property
    def exact(self) -> bool:
        """Whether all coordinates are exact rationals."""
        return all(isinstance(x, Fraction) for p in self.points for x in p)

    @property
    def cardinality(self) -> int:
        """The number t of exponent vectors."""
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        """Return the points as a (t, dim) float array."""
        return np.array(
            [[float(x) for x in p] for p in self.points], dtype=float
        ).reshape(len(self.points), self.dim)

    def to_json(self) -> dict[str, Any]:
        """Serialize to ``{"dim": n, "points": [...]}``."""
        return {
            "dim": self.dim,
            "points": [[coordinate_to_json(x) for x in p] for p in self.points]
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "Support":
        """Parse the JSON form produced by `to_json`.

        Raises:
            ValueError: If the object is malformed.
        """
        try:
            points = obj["points"]
            dim = int(obj.get("dim", len(points[0]) if points else 0))
        except (KeyError, TypeError, IndexError) as e:
            raise ValueError(f"Malformed support JSON: {obj!r}") from e
        return cls.of(points, dim)
