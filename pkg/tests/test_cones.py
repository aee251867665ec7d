import numpy as np
import pytest

from fewlab.core.errors import ConeDomainError
from fewlab.cones import (
    CharFnMethod,
    ProperCone,
    SubspacePair,
    char_function,
    char_function_mc,
    crucial_inequality,
    dual_cone,
    projection_determinant,
    sigma,
    sigma_many,
    triangulate,
)

SQUARE_CONE = [(1, 1, 1), (1, -1, 1), (-1, -1, 1), (-1, 1, 1)]


def random_simplicial(n: int, rng: np.random.Generator) -> ProperCone:
    """A simplicial cone around the all-ones direction."""
    gens = np.ones((n, n)) + 0.6 * rng.standard_normal((n, n))
    return ProperCone.of(np.abs(gens))


def test_proper_cone_rejects_non_pointed():
    with pytest.raises(ValueError):
        ProperCone.of([(1, 0), (-1, 0), (0, 1)])


def test_proper_cone_rejects_low_rank():
    with pytest.raises(ValueError):
        ProperCone.of([(1, 0, 0), (0, 1, 0)])


def test_extreme_generators_drop_redundant_ones():
    cone = ProperCone.of([(1, 0), (0, 1), (1, 1), (2, 0)])
    assert len(cone.extreme_generators) == 2


def test_dual_of_simplicial_cone_is_the_dual_basis():
    cone = random_simplicial(3, np.random.default_rng(0))
    dual = dual_cone(cone)
    assert np.allclose(dual.as_array() @ cone.as_array().T, np.eye(3), atol=1e-10)


def test_dual_of_square_cone():
    cone = ProperCone.of(SQUARE_CONE)
    dual = dual_cone(cone)
    for g in cone.as_array():
        assert np.all(dual.as_array() @ g >= -1e-9)
    assert dual.contains([0.0, 0.0, 1.0])
    assert not dual.contains([1.0, 0.0, 0.5])


def test_orthant_char_function():
    value = char_function(ProperCone.orthant(3), [1.0, 2.0, 4.0])
    assert value.method is CharFnMethod.EXACT_SIMPLICIAL
    assert value.value == pytest.approx(1 / 8)


def test_char_function_is_homogeneous():
    cone = random_simplicial(3, np.random.default_rng(2))
    x = dual_cone(cone).as_array().sum(axis=0)
    base = char_function(cone, x).value
    assert char_function(cone, 2.5 * x).value == pytest.approx(base / 2.5 ** 3)


def test_char_function_outside_the_dual_interior():
    with pytest.raises(ConeDomainError):
        char_function(ProperCone.orthant(2), [1.0, 0.0])
    with pytest.raises(ConeDomainError):
        char_function(ProperCone.orthant(2), [1.0, -1.0])


def test_triangulation_of_square_cone():
    cone = ProperCone.of(SQUARE_CONE)
    pieces = triangulate(cone)
    assert len(pieces) == 2
    x = [0.2, -0.1, 1.0]
    halves = [ProperCone.of([SQUARE_CONE[0], SQUARE_CONE[1], SQUARE_CONE[2]]),
              ProperCone.of([SQUARE_CONE[0], SQUARE_CONE[3], SQUARE_CONE[2]])]
    value = char_function(cone, x)
    assert value.method is CharFnMethod.TRIANGULATED
    assert value.value == pytest.approx(sum(char_function(h, x).value for h in halves))


@pytest.mark.parametrize("seed", range(4))
def test_monte_carlo_matches_exact_value(seed):
    rng = np.random.default_rng(seed)
    cone = random_simplicial(3, rng)
    x = dual_cone(cone).as_array().T @ rng.uniform(0.5, 1.5, 3)
    exact = char_function(cone, x).value
    estimate = char_function_mc(cone, x, samples=200_000, seed=seed)
    assert estimate.method is CharFnMethod.MONTE_CARLO
    assert abs(estimate.value - exact) <= 4 * estimate.std_error + 1e-12


def test_monte_carlo_on_square_cone():
    cone = ProperCone.of(SQUARE_CONE)
    x = [0.1, 0.2, 1.0]
    estimate = char_function_mc(cone, x, samples=200_000, seed=9)
    assert abs(estimate.value - char_function(cone, x).value) <= 4 * estimate.std_error


def test_crucial_inequality_equality_case():
    cone = random_simplicial(3, np.random.default_rng(4))
    lhs, holds = crucial_inequality(cone, dual_cone(cone).as_array())
    assert holds
    assert lhs == pytest.approx(1.0, rel=1e-9)


def test_crucial_inequality_holds_on_random_families():
    rng = np.random.default_rng(6)
    for _ in range(50):
        cone = random_simplicial(3, rng)
        dual = dual_cone(cone).as_array()
        b = rng.uniform(0.0, 1.0, (3, 3)) @ dual
        lhs, holds = crucial_inequality(cone, b)
        assert holds
        assert 0.0 <= lhs <= 1.0 + 1e-9


def test_crucial_inequality_singular_family():
    cone = ProperCone.orthant(2)
    assert crucial_inequality(cone, [(1.0, 1.0), (2.0, 2.0)]) == (0.0, True)


def test_crucial_inequality_rejects_vectors_outside_the_dual():
    with pytest.raises(ConeDomainError):
        crucial_inequality(ProperCone.orthant(2), [(1.0, -1.0), (0.0, 1.0)])


def test_sigma_of_orthogonal_and_intersecting_subspaces():
    orthogonal = SubspacePair.from_spanning([(1, 0, 0)], [(0, 1, 0), (0, 0, 1)], 3)
    assert sigma(orthogonal) == pytest.approx(1.0)
    meeting = SubspacePair.from_spanning([(1, 0, 0), (0, 1, 0)], [(1, 1, 0)], 3)
    assert sigma(meeting) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (4, 2), (5, 3)])
def test_sigma_identities(n, k):
    pair = SubspacePair.random(n, k, seed=n * 10 + k)
    value = sigma(pair)
    assert 0.0 <= value <= 1.0
    assert sigma(pair.swapped()) == pytest.approx(value, abs=1e-10)
    assert sigma(pair.complement()) == pytest.approx(value, abs=1e-10)
    assert projection_determinant(pair) == pytest.approx(value, abs=1e-10)


def test_sigma_many_with_orthogonal_parts():
    rng = np.random.default_rng(8)
    q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
    w_parts = [q[:, :1].T, q[:, 1:3].T]
    pair = SubspacePair.random(4, 1, seed=8)
    v = pair.v
    joined = SubspacePair(tuple(map(tuple, v)), tuple(map(tuple, q[:, :3].T)), 4)
    assert sigma_many(v, w_parts) == pytest.approx(sigma(joined), abs=1e-10)


def test_subspace_pair_rejects_wrong_dimensions():
    with pytest.raises(ValueError):
        SubspacePair.from_spanning([(1, 0, 0)], [(0, 1, 0)], 3)


def unit_rows(cone: ProperCone) -> np.ndarray:
    gens = cone.extreme_generators
    units = gens / np.linalg.norm(gens, axis=1, keepdims=True)
    return units[np.lexsort(np.round(units, 9).T[::-1])]


@pytest.mark.parametrize("seed", range(4))
def test_dual_of_the_dual_is_the_cone(seed):
    cone = random_simplicial(3, np.random.default_rng(seed))
    assert np.allclose(unit_rows(dual_cone(dual_cone(cone))), unit_rows(cone), atol=1e-9)


def test_dual_of_the_dual_of_square_cone():
    cone = ProperCone.of(SQUARE_CONE)
    assert np.allclose(unit_rows(dual_cone(dual_cone(cone))), unit_rows(cone), atol=1e-9)


@pytest.mark.parametrize("generators", ["simplicial", "square"])
def test_char_function_under_a_linear_map(generators):
    rng = np.random.default_rng(21)
    cone = random_simplicial(3, rng) if generators == "simplicial" else ProperCone.of(SQUARE_CONE)
    x = dual_cone(cone).as_array().sum(axis=0)
    for _ in range(5):
        g = rng.standard_normal((3, 3))
        while abs(np.linalg.det(g)) < 0.2:
            g = rng.standard_normal((3, 3))
        image = ProperCone.of(cone.as_array() @ g.T)
        z = np.linalg.solve(g.T, x)
        expected = abs(np.linalg.det(g)) * char_function(cone, x).value
        assert char_function(image, z).value == pytest.approx(expected, rel=1e-9)
