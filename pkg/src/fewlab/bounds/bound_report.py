"""Every applicable bound and reference value for one support configuration."""

import itertools
from dataclasses import dataclass
from typing import Any, Sequence

from ..counting.univariate import ek_expected_univariate
from ..geometry.minkowski import minkowski_vertex_decomposition
from ..geometry.polytope import hull_vertices
from ..geometry.support import Support
from .closed_forms import (bound_betc_unmixed, bound_jindal, bound_mixed, bound_unmixed,
                           conjecture_reference_scale, kushnirenko_reference,
                           mvr_product_identity, product_form_bound)

__all__ = [
    "BoundReport",
    "sum_vertex_count",
    "axis_factors",
    "product_factors",
    "lower_bound_reference",
    "bound_report",
]


@dataclass(frozen=True)
class BoundReport:
    """Bounds for ``E(A_1, ..., A_n)``.

    Optional fields are None when they do not apply and are left out of
    the JSON form.

    Attributes:
        n: Number of variables.
        t: Support sizes.
        v0: Vertices of the Minkowski sum of the Newton polytopes.
        thm_mixed: The mixed bound, always present.
        kushnirenko_ref: ``(t_1 - 1) ... (t_n - 1)``, for comparison.
        conjecture_scale: ``sqrt(t_1 ... t_n)``, non-normative.
        prop_unmixed: The unmixed bound, when all supports coincide.
        betc_unmixed: The earlier unmixed bound, when all supports coincide.
        jindal: The univariate bound, when n = 1.
        lower_bound_ref: The exact value for axis-separated supports.
        mvr_product: The exact value for a shared product support.
        product_form: ``2^n sqrt(t) / vol(P^n)`` for a shared product support.
    """

    n: int
    t: tuple[int, ...]
    v0: int
    thm_mixed: float
    kushnirenko_ref: float
    conjecture_scale: float
    prop_unmixed: float | None = None
    betc_unmixed: float | None = None
    jindal: float | None = None
    lower_bound_ref: float | None = None
    mvr_product: float | None = None
    product_form: float | None = None

    def __post_init__(self):
        for name, value in self.values().items():
            if value < 0:
                raise ValueError(f"{name} must be nonnegative, got {value}")

    def values(self) -> dict[str, float]:
        """The present numeric fields, by name."""
        names = ("thm_mixed", "kushnirenko_ref", "conjecture_scale", "prop_unmixed",
                 "betc_unmixed", "jindal", "lower_bound_ref", "mvr_product", "product_form")
        return {k: getattr(self, k) for k in names if getattr(self, k) is not None}

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "t": list(self.t), "v0": self.v0, **self.values()}


def sum_vertex_count(supports: Sequence[Support]) -> int:
    """The number V_0 of vertices of ``conv(A_1) + ... + conv(A_n)``."""
    return minkowski_vertex_decomposition([hull_vertices(s) for s in supports]).vertex_count


def axis_factors(supports: Sequence[Support]) -> list[Support] | None:
    """Univariate factors when equation i involves a distinct single coordinate.

    Returns:
        For each equation, the support of its one varying coordinate; None
        if the supports are not of that form.
    """
    n = len(supports)
    axes = []
    factors = []
    for s in supports:
        varying = [j for j in range(n) if len({p[j] for p in s.points}) > 1]
        if len(varying) > 1:
            return None
        axis = varying[0] if varying else None
        axes.append(axis)
        factors.append(Support.of([(p[axis],) for p in s.points]) if axis is not None
                       else Support.of([(0,)]))
    present = [a for a in axes if a is not None]
    if len(set(present)) != len(present):
        return None
    return factors


def product_factors(support: Support) -> list[Support] | None:
    """The factors S_1, ..., S_n when the support equals ``S_1 x ... x S_n``."""
    columns = [sorted(set(p[j] for p in support.points)) for j in range(support.dim)]
    if set(itertools.product(*columns)) != set(support.points):
        return None
    return [Support.of([(x,) for x in col]) for col in columns]


def lower_bound_reference(supports: Sequence[Support]) -> float | None:
    """Product of the univariate expectations, or None unless the supports are axis-separated.

    For axis-separated supports the equations decouple, so this is the exact expectation.
    """
    axis = axis_factors(supports)
    if axis is None:
        return None
    value = 1.0
    for f in axis:
        value *= ek_expected_univariate(f)
    return value


def bound_report(supports: Sequence[Support]) -> BoundReport:
    """Collect the bounds that apply to a support configuration."""
    supports = list(supports)
    n = len(supports)
    t = tuple(len(s) for s in supports)
    v0 = sum_vertex_count(supports)
    optional: dict[str, float] = {}
    if all(s.points == supports[0].points for s in supports):
        optional["prop_unmixed"] = bound_unmixed(n, t[0], v0)
        optional["betc_unmixed"] = bound_betc_unmixed(n, t[0])
        factors = product_factors(supports[0])
        if factors is not None:
            optional["mvr_product"] = mvr_product_identity(
                [ek_expected_univariate(f) for f in factors])
            optional["product_form"] = product_form_bound(n, t[0])
    if n == 1:
        optional["jindal"] = bound_jindal(t[0])
    reference = lower_bound_reference(supports)
    if reference is not None:
        optional["lower_bound_ref"] = reference
    return BoundReport(n, t, v0, bound_mixed(n, t, v0), kushnirenko_reference(t),
                       conjecture_reference_scale(t), **optional)
