"""Relative position of complementary subspaces.

``sigma(V, W)`` is the absolute determinant of the square matrix stacking
orthonormal bases of V and W. It is 1 when the subspaces are orthogonal and
0 when they intersect.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import null_space, orth

__all__ = [
    "ORTHONORMAL_TOL",
    "SubspacePair",
    "sigma",
    "sigma_many",
    "projection_determinant",
]


ORTHONORMAL_TOL = 1e-10


def _as_basis(rows: Sequence[Sequence[float]], n: int) -> np.ndarray:
    return np.asarray(rows, dtype=float).reshape(-1, n)


@dataclass(frozen=True)
class SubspacePair:
    """Two subspaces of complementary dimensions, given by orthonormal bases.

    Attributes:
        v_basis: Orthonormal rows spanning V.
        w_basis: Orthonormal rows spanning W.
        ambient_dim: Dimension n; ``dim V + dim W = n``.
    """

    v_basis: tuple[tuple[float, ...], ...]
    w_basis: tuple[tuple[float, ...], ...]
    ambient_dim: int

    def __post_init__(self):
        v, w = self.v, self.w
        if len(v) + len(w) != self.ambient_dim:
            raise ValueError("Subspace dimensions must add up to the ambient dimension")
        for name, basis in (("V", v), ("W", w)):
            if len(basis) and not np.allclose(basis @ basis.T, np.eye(len(basis)),
                                              atol=ORTHONORMAL_TOL):
                raise ValueError(f"Basis of {name} is not orthonormal")

    @property
    def v(self) -> np.ndarray:
        return _as_basis(self.v_basis, self.ambient_dim)

    @property
    def w(self) -> np.ndarray:
        return _as_basis(self.w_basis, self.ambient_dim)

    @classmethod
    def from_spanning(cls, v_vectors: Sequence[Sequence[float]],
                      w_vectors: Sequence[Sequence[float]], n: int) -> "SubspacePair":
        """Orthonormalize spanning sets of V and W."""
        v = _as_basis(v_vectors, n)
        w = _as_basis(w_vectors, n)
        v_basis = orth(v.T).T if len(v) else v
        w_basis = orth(w.T).T if len(w) else w
        return cls(tuple(map(tuple, v_basis)), tuple(map(tuple, w_basis)), n)

    @classmethod
    def random(cls, n: int, k: int, seed: int = 0) -> "SubspacePair":
        """Independent Gaussian subspaces with ``dim V = k``."""
        if not 0 <= k <= n:
            raise ValueError(f"Need 0 <= k <= n, got k={k}, n={n}")
        rng = np.random.default_rng(seed)
        v = rng.standard_normal((k, n))
        w = rng.standard_normal((n - k, n))
        return cls.from_spanning(v, w, n)

    def complement(self) -> "SubspacePair":
        """The pair ``(V^perp, W^perp)``, with V^perp of dimension ``dim W``."""
        n = self.ambient_dim
        v_perp = null_space(self.v).T if len(self.v) else np.eye(n)
        w_perp = null_space(self.w).T if len(self.w) else np.eye(n)
        return SubspacePair(tuple(map(tuple, v_perp)), tuple(map(tuple, w_perp)), n)

    def swapped(self) -> "SubspacePair":
        return SubspacePair(self.w_basis, self.v_basis, self.ambient_dim)


def sigma(pair: SubspacePair) -> float:
    """``|det|`` of the matrix stacking the bases of V and W, in [0, 1]."""
    return float(min(1.0, abs(np.linalg.det(np.vstack([pair.v, pair.w])))))


def sigma_many(v_basis: np.ndarray, w_bases: Sequence[np.ndarray]) -> float:
    """``sigma(V, W_1, ..., W_k)`` for orthonormal bases whose sizes add up to n.

    For pairwise orthogonal W_i this equals ``sigma(V, W_1 + ... + W_k)``.
    """
    stacked = np.vstack([np.atleast_2d(v_basis), *[np.atleast_2d(w) for w in w_bases]])
    if stacked.shape[0] != stacked.shape[1]:
        raise ValueError("Basis sizes must add up to the ambient dimension")
    return float(abs(np.linalg.det(stacked)))


def projection_determinant(pair: SubspacePair) -> float:
    """``|det|`` of the orthogonal projection ``V^perp -> W``.

    Both spaces have dimension ``dim W``; the map is expressed in their
    orthonormal bases.
    """
    if len(pair.w) == 0:
        return 1.0
    v_perp = pair.complement().v
    return float(abs(np.linalg.det(pair.w @ v_perp.T)))
