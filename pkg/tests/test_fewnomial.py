import numpy as np
import pytest

from fewlab.geometry import Support
from fewlab.fewnomial import (
    FewnomialSystem,
    gl_transform,
    gl_zero_map,
    sample_gaussian,
    scale_coordinates,
    stretch,
    sum_polytope_dimension,
    translate_support,
)

SUPPORTS = (
    Support.of([(0, 0), (1, 0), (0, 1), (2, 3)]),
    Support.of([(0, 0), (1, 2), (3, 1)]),
)


def direct_eval(system: FewnomialSystem, w: np.ndarray) -> np.ndarray:
    return np.array([
        sum(c * np.exp(np.dot(a, w)) for c, a in zip(coeffs, s.as_array()))
        for s, coeffs in zip(system.supports, system.coeffs)
    ])


def test_system_checks_shapes():
    with pytest.raises(ValueError):
        FewnomialSystem((SUPPORTS[0],), ((1.0, 2.0, 3.0, 4.0),))
    with pytest.raises(ValueError):
        FewnomialSystem(SUPPORTS, ((1.0,) * 4, (1.0,) * 2))
    with pytest.raises(ValueError):
        FewnomialSystem(SUPPORTS, ((1.0,) * 4,))


def test_sampling_is_reproducible():
    assert sample_gaussian(SUPPORTS, seed=11) == sample_gaussian(SUPPORTS, seed=11)
    assert sample_gaussian(SUPPORTS, seed=11) != sample_gaussian(SUPPORTS, seed=12)
    assert sample_gaussian(SUPPORTS, seed=11).seed == 11


def test_eval_matches_the_exponential_sum():
    system = sample_gaussian(SUPPORTS, seed=1)
    for w in np.random.default_rng(1).standard_normal((10, 2)):
        assert np.allclose(system.eval(w), direct_eval(system, w), rtol=1e-12)


def test_eval_batch_shape():
    system = sample_gaussian(SUPPORTS, seed=1)
    assert system.eval(np.zeros((5, 2))).shape == (5, 2)


def test_scaled_eval_does_not_overflow():
    system = sample_gaussian(SUPPORTS, seed=2)
    mantissa, scale = system.eval_scaled([400.0, 300.0])
    assert np.all(np.isfinite(mantissa))
    assert scale[0] == pytest.approx(2 * 400.0 + 3 * 300.0)


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(3)
    for k in range(5):
        system = sample_gaussian(SUPPORTS, seed=k)
        w = 0.5 * rng.standard_normal(2)
        exact = system.jacobian(w)
        approx = system.jacobian_fd(w, h=1e-6)
        assert np.allclose(exact, approx, rtol=1e-6, atol=1e-6 * np.max(np.abs(exact)))


def test_system_json_round_trip():
    system = sample_gaussian(SUPPORTS, seed=5)
    assert FewnomialSystem.from_json(system.to_json()) == system
    with pytest.raises(ValueError):
        FewnomialSystem.from_json({"coeffs": []})


def test_translation_multiplies_each_equation_by_a_monomial():
    system = sample_gaussian(SUPPORTS, seed=6)
    shifts = [(2, -1), (-3, 4)]
    moved = translate_support(system, shifts)
    w = np.array([0.3, -0.2])
    factors = np.exp(np.array(shifts, dtype=float) @ w)
    assert np.allclose(moved.eval(w), factors * system.eval(w))
    assert moved.coeffs == system.coeffs


def test_linear_transform_moves_zeros():
    system = sample_gaussian(SUPPORTS, seed=7)
    g = [[1, 1], [0, 1]]
    image = gl_transform(system, g)
    assert image.supports[1].exact
    z = np.array([0.4, -0.7])
    w = gl_zero_map(g, z)
    assert np.allclose(image.eval(w), system.eval(z))


def test_linear_transform_rejects_singular_maps():
    system = sample_gaussian(SUPPORTS, seed=7)
    with pytest.raises(ValueError):
        gl_transform(system, [[1, 2], [2, 4]])
    with pytest.raises(ValueError):
        gl_transform(system, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_coordinate_scaling_and_stretch():
    system = sample_gaussian(SUPPORTS, seed=8)
    w = np.array([0.1, 0.25])
    scaled = scale_coordinates(system, [2, 3])
    assert np.allclose(scaled.eval(w), system.eval(w * [2, 3]))
    stretched = stretch(system, 4)
    assert np.allclose(stretched.eval(w), system.eval(4 * w))


def test_sum_polytope_dimension():
    assert sum_polytope_dimension(SUPPORTS) == 2
    segments = [Support.of([(0, 0, 0), (1, 0, 0)]), Support.of([(0, 0, 0), (0, 1, 0)]),
                Support.of([(0, 0, 0), (1, 1, 0)])]
    assert sum_polytope_dimension(segments) == 2
    assert sum_polytope_dimension([Support.of([(0.0,), (1.5,)])]) == 1
