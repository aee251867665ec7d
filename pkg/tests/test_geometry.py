from fractions import Fraction

import numpy as np
import pytest

from fewlab.core.errors import DegenerateFanError, NotAVertexError
from fewlab.geometry import (
    Support,
    affine_dimension,
    exact_feasible,
    exact_in_hull,
    exact_rank,
    fan_cover_check,
    generators_to_halfspaces,
    halfspaces_to_generators,
    hull_vertices,
    minkowski_sum,
    minkowski_vertex_decomposition,
    normal_cone,
)

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def segment(i: int, n: int) -> Support:
    return Support.of([tuple(0 for _ in range(n)), tuple(int(j == i) for j in range(n))])


@pytest.mark.parametrize("points", [
    [],
    [(0, 0), (0, 0)],
    [(0, 0), (1,)],
])
def test_support_rejects_invalid_points(points):
    with pytest.raises(ValueError):
        Support.of(points, dim=2)


def test_support_keeps_rationals_exact():
    s = Support.of([(0, 0), ([1, 2], 1)])
    assert s.exact
    assert s.points[1][0] == Fraction(1, 2)
    assert s.to_json() == {"dim": 2, "points": [[0, 0], [[1, 2], 1]]}
    assert Support.from_json(s.to_json()) == s


def test_support_switches_to_floats():
    s = Support.of([(0, 0), (0.5, 1)])
    assert not s.exact
    assert s.as_array().shape == (2, 2)


def test_hull_drops_interior_points():
    poly = hull_vertices(Support.of(SQUARE + [(Fraction(1, 2), Fraction(1, 3))]))
    assert len(poly.vertices) == 4
    assert poly.affine_dim == 2
    assert poly.exact


def test_hull_of_collinear_points():
    poly = hull_vertices(Support.of([(0, 0), (1, 1), (2, 2), (3, 3)]))
    assert set(poly.vertices) == {(0, 0), (3, 3)}
    assert poly.affine_dim == 1


def test_hull_of_singleton():
    poly = hull_vertices(Support.of([(2, 5)]))
    assert poly.affine_dim == 0
    assert len(poly.vertices) == 1


def test_hull_of_float_support():
    poly = hull_vertices(Support.of([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.25, 0.25)]))
    assert len(poly.vertices) == 3


def test_affine_dimension():
    assert affine_dimension([(0, 0, 0), (1, 0, 0), (0, 1, 0)]) == 2
    assert affine_dimension([(0.0, 0.0), (1e-3, 2e-3)]) == 1


def test_normal_cone_of_square_corner():
    poly = hull_vertices(Support.of(SQUARE))
    cone = normal_cone(poly, (0, 0))
    assert cone.pointed
    assert cone.contains([1.0, 2.0])
    assert cone.contains([0.0, 1.0])
    assert not cone.contains([-1.0, 0.5])


def test_normal_cone_of_segment_has_lineality():
    poly = hull_vertices(segment(0, 2))
    cone = normal_cone(poly, (0, 0))
    assert cone.lineality_dim == 1
    assert cone.contains([0.0, -5.0])
    assert not cone.contains([-1.0, 0.0])


def test_normal_cone_rejects_non_vertex():
    poly = hull_vertices(Support.of(SQUARE))
    with pytest.raises(NotAVertexError):
        normal_cone(poly, (Fraction(1, 2), 0))


def test_cone_representations_agree():
    normals = np.array([[1.0, 0.0], [1.0, 1.0]])
    rays, lines = halfspaces_to_generators(normals, 2)
    assert not lines
    back = generators_to_halfspaces(np.array(rays), 2)
    for y in np.random.default_rng(3).standard_normal((50, 2)):
        assert np.all(normals @ y >= 0) == np.all(back @ y >= -1e-12)


def test_segments_sum_to_a_parallelepiped():
    n = 3
    polys = [hull_vertices(segment(i, n)) for i in range(n)]
    decomposition = minkowski_vertex_decomposition(polys)
    assert decomposition.vertex_count == 2 ** n
    assert decomposition.parts_of((1, 1, 1)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert decomposition.parts_of((0, 0, 0)) == ((0, 0, 0),) * 3
    assert decomposition.parts_of((2, 0, 0)) is None


def test_triangle_plus_its_negative_is_a_hexagon():
    up = hull_vertices(Support.of([(0, 0), (1, 0), (0, 1)]))
    down = hull_vertices(Support.of([(0, 0), (-1, 0), (0, -1)]))
    decomposition = minkowski_vertex_decomposition([up, down])
    assert decomposition.vertex_count == 6
    assert not decomposition.borderline
    for entry in decomposition.entries:
        total = np.sum([[float(x) for x in p] for p in entry.parts], axis=0)
        assert np.allclose(total, [float(x) for x in entry.point])
        assert entry.slack > 0


def test_sum_vertex_count_is_at_most_the_product():
    rng = np.random.default_rng(5)
    for _ in range(5):
        polys = [hull_vertices(Support.of(np.unique(rng.integers(0, 6, size=(5, 2)), axis=0).tolist()))
                 for _ in range(2)]
        decomposition = minkowski_vertex_decomposition(polys)
        assert 1 <= decomposition.vertex_count <= len(polys[0].vertices) * len(polys[1].vertices)
        assert len({e.part_indices for e in decomposition.entries}) == decomposition.vertex_count


def test_minkowski_sum_polytope():
    square = hull_vertices(Support.of(SQUARE))
    total = minkowski_sum([square, square])
    assert set(total.vertices) == {(0, 0), (2, 0), (0, 2), (2, 2)}
    assert total.affine_dim == 2


def test_fan_cover_of_sum():
    polys = [hull_vertices(segment(0, 2)), hull_vertices(Support.of([(0, 0), (1, 2), (2, 1)]))]
    assert fan_cover_check(polys, samples=2000, seed=1)


def test_fan_cover_needs_full_dimension():
    polys = [hull_vertices(segment(0, 2)), hull_vertices(Support.of([(0, 0), (3, 0)]))]
    with pytest.raises(DegenerateFanError):
        fan_cover_check(polys, samples=10)


def test_exact_linear_programs():
    half = Fraction(1, 2)
    assert exact_feasible([[1, 1]], [half])
    assert not exact_feasible([[1, 1]], [-half])
    assert not exact_feasible([[1, -1], [1, 1]], [1, 0])
    assert exact_in_hull((half, half), [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert not exact_in_hull((1, 1), [(0, 0), (1, 0), (0, 1)])
    assert exact_in_hull((Fraction(1, 3), Fraction(1, 3)), [(0, 0), (1, 0), (0, 1)])


def test_exact_rank():
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([[1, 0, 0], [0, Fraction(1, 3), 0], [1, 1, 0]]) == 2
    assert exact_rank([[0, 0]]) == 0
    assert exact_rank([]) == 0


def test_hull_vertices_is_idempotent():
    rng = np.random.default_rng(11)
    for _ in range(5):
        points = np.unique(rng.integers(-4, 5, size=(8, 2)), axis=0).tolist()
        poly = hull_vertices(Support.of(points))
        again = hull_vertices(Support.of(list(poly.vertices)))
        assert set(again.vertices) == set(poly.vertices)
        assert again.affine_dim == poly.affine_dim


def test_normal_cone_of_a_sum_is_the_intersection():
    rng = np.random.default_rng(8)
    polys = [hull_vertices(Support.of(np.unique(rng.integers(0, 5, size=(5, 2)), axis=0).tolist()))
             for _ in range(2)]
    total = minkowski_sum(polys)
    rays = rng.standard_normal((200, 2))
    for entry in minkowski_vertex_decomposition(polys).entries:
        outer = normal_cone(total, entry.point)
        inner = [normal_cone(p, v) for p, v in zip(polys, entry.parts)]
        for y in rays:
            assert outer.contains(y) == all(c.contains(y) for c in inner)
