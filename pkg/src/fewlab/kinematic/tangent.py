"""Tangent maps of the monomial curves ``w -> [exp(<a, w>)]_{a in A_i}``.

Each equation's monomial vector is normalized to the unit sphere; its
derivative, projected onto the tangent space at the normalized point, is
the block ``T_i`` that drives the kinematic integrand.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry.support import Support

__all__ = [
    "TangentMap",
    "unit_monomials",
    "tangent_blocks",
    "tangent_map",
    "chart_derivative_norm",
]


@dataclass(frozen=True)
class TangentMap:
    """Projected derivatives of the normalized monomial vectors at one point.

    Attributes:
        blocks: Per-equation arrays ``T_i`` of shape (t_i, n).
        normals: Per-equation unit monomial vectors ``u_i`` of shape (t_i,).
    """

    blocks: tuple[np.ndarray, ...]
    normals: tuple[np.ndarray, ...]

    def max_normal_component(self) -> float:
        """Largest ``|T_i^T u_i|`` entry; zero up to rounding."""
        return max(float(np.max(np.abs(u @ t))) for t, u in zip(self.blocks, self.normals))


def unit_monomials(exps: np.ndarray, w: np.ndarray) -> np.ndarray:
    """``exp(<a, w>)`` over a, normalized to unit length, for each row of w.

    Args:
        exps: Exponents (t, n).
        w: Points (k, n).

    Returns:
        Array (k, t).
    """
    logs = w @ exps.T
    g = np.exp(logs - logs.max(axis=1, keepdims=True))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def tangent_blocks(exps: np.ndarray, w: np.ndarray) -> np.ndarray:
    """``(I - u u^T) diag(gamma) E / |gamma|`` for each row of w, shape (k, t, n)."""
    u = unit_monomials(exps, w)
    v = u[:, :, None] * exps[None, :, :]
    return v - u[:, :, None] * np.einsum("kt,ktn->kn", u, v)[:, None, :]


def tangent_map(supports: Sequence[Support], w: Sequence[float]) -> TangentMap:
    """Tangent blocks of every equation at a single point w."""
    point = np.asarray(w, dtype=float)[None, :]
    if not np.all(np.isfinite(point)):
        raise ValueError("w must be finite")
    blocks, normals = [], []
    for s in supports:
        exps = s.as_array()
        blocks.append(tangent_blocks(exps, point)[0])
        normals.append(unit_monomials(exps, point)[0])
    return TangentMap(tuple(blocks), tuple(normals))


def chart_derivative_norm(y: Sequence[float]) -> float:
    """Operator norm of the derivative of ``y -> (1, y) / |(1, y)|``.

    It equals ``1 / |(1, y)|`` and so never exceeds 1.
    """
    y = np.asarray(y, dtype=float)
    point = np.concatenate([[1.0], y])
    norm = np.linalg.norm(point)
    u = point / norm
    embed = np.vstack([np.zeros((1, len(y))), np.eye(len(y))])
    derivative = (embed - np.outer(u, u @ embed)) / norm
    return float(np.linalg.norm(derivative, 2))
