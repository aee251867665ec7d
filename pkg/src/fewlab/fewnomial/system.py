"""Fewnomial systems in exponential coordinates.

With ``x = exp(w)``, a sparse polynomial with exponent set A becomes the
exponential sum ``F(w) = sum_a c(a) exp(<a, w>)``. A system has n supports
in R^n and one coefficient per exponent, stored by position in the support.

Evaluation factors out ``M = max_a <a, w>`` per equation so values at large
``|w|`` never overflow; the pair (mantissa, M) is available directly.

System JSON example ::

{
  "supports": [{"dim": 1, "points": [[0], [1]]}],
  "coeffs": [[-1.0, 1.0]],
  "seed": 7
}
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Sequence

import numpy as np

from ..geometry.support import Support

__all__ = [
    "FewnomialSystem",
    "sample_gaussian",
]


@dataclass(frozen=True)
class FewnomialSystem:
    """A square system of n exponential sums in n variables.

    Attributes:
        supports: The n supports, all in R^n.
        coeffs: Per-support coefficient tuples, indexed like the points.
        seed: Seed the coefficients were sampled with, if any.
    """

    supports: tuple[Support, ...]
    coeffs: tuple[tuple[float, ...], ...]
    seed: int | None = None

    def __post_init__(self):
        n = len(self.supports)
        if n == 0:
            raise ValueError("A system needs at least one equation")
        for i, support in enumerate(self.supports):
            if support.dim != n:
                raise ValueError(
                    f"Support {i} lives in R^{support.dim}, expected R^{n}"
                )
        if len(self.coeffs) != n:
            raise ValueError(f"Expected {n} coefficient lists, got {len(self.coeffs)}")
        for i, (support, c) in enumerate(zip(self.supports, self.coeffs)):
            if len(c) != len(support):
                raise ValueError(
                    f"Equation {i} has {len(c)} coefficients for {len(support)} exponents"
                )

    @property
    def n(self) -> int:
        return len(self.supports)

    @cached_property
    def exponents(self) -> tuple[np.ndarray, ...]:
        """Per-equation exponent arrays of shape (t_i, n)."""
        return tuple(s.as_array() for s in self.supports)

    @cached_property
    def coefficient_arrays(self) -> tuple[np.ndarray, ...]:
        return tuple(np.asarray(c, dtype=float) for c in self.coeffs)

    def _terms(self, w: np.ndarray, i: int) -> tuple[np.ndarray, np.ndarray]:
        """Scaled terms ``c(a) exp(<a, w> - M)`` of shape (k, t_i) and M."""
        exps = w @ self.exponents[i].T
        m = exps.max(axis=1)
        return self.coefficient_arrays[i] * np.exp(exps - m[:, None]), m

    def eval_scaled(self, w: Sequence[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Evaluate as ``mantissa * exp(scale)``.

        Args:
            w: A point of shape (n,) or a batch of shape (k, n).

        Returns:
            ``(mantissa, scale)``, each shaped like `w`.
        """
        w = np.asarray(w, dtype=float)
        batch = np.atleast_2d(w)
        mantissa = np.empty_like(batch)
        scale = np.empty_like(batch)
        for i in range(self.n):
            terms, m = self._terms(batch, i)
            mantissa[:, i] = terms.sum(axis=1)
            scale[:, i] = m
        if w.ndim == 1:
            return mantissa[0], scale[0]
        return mantissa, scale

    def eval(self, w: Sequence[float] | np.ndarray) -> np.ndarray:
        """Evaluate ``F_i(w) = sum_a c_i(a) exp(<a, w>)`` for every equation."""
        mantissa, scale = self.eval_scaled(w)
        with np.errstate(over="ignore"):
            return mantissa * np.exp(scale)

    def jacobian_scaled(self, w: Sequence[float] | np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Jacobian with row i divided by ``exp(M_i)``.

        Returns:
            ``(rows, scale)`` of shapes (n, n) and (n,), or batched with a
            leading axis.
        """
        w = np.asarray(w, dtype=float)
        batch = np.atleast_2d(w)
        rows = np.empty((len(batch), self.n, self.n))
        scale = np.empty((len(batch), self.n))
        for i in range(self.n):
            terms, m = self._terms(batch, i)
            rows[:, i, :] = terms @ self.exponents[i]
            scale[:, i] = m
        if w.ndim == 1:
            return rows[0], scale[0]
        return rows, scale

    def jacobian(self, w: Sequence[float] | np.ndarray) -> np.ndarray:
        """``dF_i/dw_j = sum_a c_i(a) a_j exp(<a, w>)``."""
        rows, scale = self.jacobian_scaled(w)
        with np.errstate(over="ignore"):
            return rows * np.exp(scale)[..., None]

    def jacobian_fd(self, w: Sequence[float], h: float = 1e-6) -> np.ndarray:
        """Central finite-difference Jacobian at a single point."""
        w = np.asarray(w, dtype=float)
        cols = []
        for j in range(self.n):
            step = np.zeros(self.n)
            step[j] = h
            cols.append((self.eval(w + step) - self.eval(w - step)) / (2 * h))
        return np.column_stack(cols)

    def to_json(self) -> dict[str, Any]:
        return {
            "supports": [s.to_json() for s in self.supports],
            "coeffs": [list(c) for c in self.coeffs],
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, obj: dict[str, Any]) -> "FewnomialSystem":
        """Parse the JSON written by `to_json`.

        Raises:
            ValueError: If the object is malformed.
        """
        try:
            supports = tuple(Support.from_json(s) for s in obj["supports"])
            coeffs = tuple(tuple(float(x) for x in c) for c in obj["coeffs"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed system JSON: {e}") from e
        seed = obj.get("seed")
        return cls(supports, coeffs, None if seed is None else int(seed))


def sample_gaussian(supports: Sequence[Support], seed: int) -> FewnomialSystem:
    """Draw i.i.d. standard Gaussian coefficients for every exponent.

    Args:
        supports: The n supports of the system.
        seed: Seed of the generator; equal seeds give equal systems.

    Returns:
        The sampled system, carrying `seed` for replay.
    """
    rng = np.random.default_rng(seed)
    coeffs = tuple(tuple(rng.standard_normal(len(s)).tolist()) for s in supports)
    return FewnomialSystem(tuple(supports), coeffs, seed)
