"""Conversions between cone representations through pycddlib.

A cone ``{y : N y >= 0}`` is given to cdd as inequality rows ``[0, N]``; a
cone generated by rays is given as generator rows ``[0, g]`` plus the apex.
"""

import cdd
import numpy as np

__all__ = [
    "ZERO_TOL",
    "halfspaces_to_generators",
    "generators_to_halfspaces",
]


ZERO_TOL = 1e-12


def _unit(vec: np.ndarray) -> np.ndarray:
    return vec / np.linalg.norm(vec)


def _canonical(vectors: list[np.ndarray]) -> list[np.ndarray]:
    """Normalize, deduplicate and sort vectors so results are deterministic."""
    out: list[np.ndarray] = []
    for v in vectors:
        u = _unit(v)
        if not any(np.allclose(u, w, atol=1e-9) for w in out):
            out.append(u)
    out.sort(key=lambda u: tuple(np.round(-u, 12)))
    return out


def halfspaces_to_generators(normals: np.ndarray,
                             dim: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Generators of ``{y : normals @ y >= 0}``.

    Args:
        normals: Array of shape (k, dim); k may be zero.
        dim: Ambient dimension.

    Returns:
        A pair ``(rays, lines)`` of unit vectors. Lines span the lineality
        space; rays generate the pointed part.
    """
    normals = np.asarray(normals, dtype=float).reshape(-1, dim)
    normals = normals[np.linalg.norm(normals, axis=1) > ZERO_TOL]
    if len(normals) == 0:
        return [], [np.eye(dim)[i] for i in range(dim)]
    rows = [[0.0, *row] for row in normals.tolist()]
    mat = cdd.matrix_from_array(rows, rep_type=cdd.RepType.INEQUALITY)
    poly = cdd.polyhedron_from_matrix(mat)
    gen = cdd.copy_generators(poly)
    rays: list[np.ndarray] = []
    lines: list[np.ndarray] = []
    for idx, row in enumerate(gen.array):
        if row[0] != 0:
            continue
        vec = np.asarray(row[1:], dtype=float)
        if np.linalg.norm(vec) <= ZERO_TOL:
            continue
        if idx in gen.lin_set:
            lines.append(vec)
        else:
            rays.append(vec)
    return _canonical(rays), _canonical(lines)


def generators_to_halfspaces(rays: np.ndarray, dim: int,
                             lines: np.ndarray | None = None) -> np.ndarray:
    """Inner normals N with ``cone(rays) + span(lines) = {y : N y >= 0}``.

    Equalities of a lower-dimensional cone appear as two opposite rows.

    Returns:
        Array of shape (k, dim) of unit normals; k is zero for all of R^dim.
    """
    rays = np.asarray(rays, dtype=float).reshape(-1, dim)
    lines = np.zeros((0, dim)) if lines is None \
        else np.asarray(lines, dtype=float).reshape(-1, dim)
    rows = [[1.0] + [0.0] * dim]
    rows += [[0.0, *r] for r in rays.tolist()]
    lin_start = len(rows)
    rows += [[0.0, *r] for r in lines.tolist()]
    mat = cdd.matrix_from_array(
        rows,
        lin_set=set(range(lin_start, len(rows))),
        rep_type=cdd.RepType.GENERATOR,
    )
    poly = cdd.polyhedron_from_matrix(mat)
    ineq = cdd.copy_inequalities(poly)
    normals: list[np.ndarray] = []
    for idx, row in enumerate(ineq.array):
        vec = np.asarray(row[1:], dtype=float)
        if np.linalg.norm(vec) <= ZERO_TOL:
            continue
        normals.append(vec)
        if idx in ineq.lin_set:
            normals.append(-vec)
    if not normals:
        return np.zeros((0, dim))
    return np.array(_canonical(normals))
