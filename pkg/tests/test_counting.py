import math

import numpy as np
import pytest

from fewlab.core.errors import ConfigError, DegenerateFanError
from fewlab.geometry import Support
from fewlab.fewnomial import (
    FewnomialSystem,
    gl_transform,
    sample_gaussian,
    scale_coordinates,
    translate_support,
)
from fewlab.counting import (
    CountOptions,
    CountResult,
    count_multivariate,
    count_univariate,
    count_zeros,
    ek_density,
    ek_expected_univariate,
    exclusion_radius,
    grid_zero_oracle,
    relative_jacobian_determinant,
)

SIMPLEX = Support.of([(0, 0), (1, 0), (0, 1)])


def segments(n: int) -> tuple[Support, ...]:
    return tuple(Support.of([(0,) * n, tuple(int(j == i) for j in range(n))]) for i in range(n))


def test_univariate_linear():
    result = count_univariate(Support.of([(0,), (1,)]), [-1.0, 1.0])
    assert result.count == 1
    assert result.certified
    assert result.zeros[0][0] == pytest.approx(0.0, abs=1e-12)
    assert count_univariate(Support.of([(0,), (1,)]), [1.0, 1.0]).count == 0


def test_univariate_quadratic_with_two_positive_roots():
    result = count_univariate(Support.of([(0,), (1,), (2,)]), [2.0, -3.0, 1.0])
    assert result.count == 2
    assert [z[0] for z in result.zeros] == pytest.approx([0.0, math.log(2.0)], abs=1e-10)


def test_univariate_count_respects_the_sign_rule():
    rng = np.random.default_rng(0)
    for t in range(2, 9):
        exps = np.sort(rng.choice(30, size=t, replace=False))
        support = Support.of([(int(a),) for a in exps])
        for _ in range(20):
            coeffs = rng.standard_normal(t)
            result = count_univariate(support, coeffs)
            changes = int(np.sum(np.sign(coeffs[1:]) != np.sign(coeffs[:-1])))
            assert result.count <= changes
            assert (changes - result.count) % 2 == 0


def test_univariate_zeros_are_zeros():
    support = Support.of([(0,), (3,), (5,), (11,)])
    coeffs = [1.0, -4.0, 4.5, -0.2]
    for (w,) in count_univariate(support, coeffs).zeros:
        terms = np.array(coeffs) * np.exp(support.as_array()[:, 0] * w)
        assert abs(terms.sum()) <= 1e-9 * np.abs(terms).sum()


def test_expected_univariate_segment():
    assert ek_expected_univariate(Support.of([(0,), (1,)])) == pytest.approx(0.5, abs=1e-6)
    assert ek_expected_univariate(Support.of([(4,)])) == 0.0


def test_expected_univariate_is_affine_invariant():
    a = ek_expected_univariate(Support.of([(0,), (1,), (3,)]))
    b = ek_expected_univariate(Support.of([(5,), (7,), (11,)]))
    assert a == pytest.approx(b, abs=1e-6)


@pytest.mark.parametrize("t", range(2, 9))
def test_expected_univariate_below_the_sqrt_bound(t):
    support = Support.of([(k * k,) for k in range(t)])
    assert ek_expected_univariate(support) <= 2 / math.pi * math.sqrt(t - 1) + 1e-9


def test_density_of_a_segment():
    support = Support.of([(0,), (1,)])
    assert ek_density(support, 0.0)[0] == pytest.approx(0.5 / math.pi)


def test_segment_systems_have_a_zero_iff_every_equation_changes_sign():
    for n in (2, 3):
        for seed in range(15):
            system = sample_gaussian(segments(n), seed)
            expected = all(c[0] * c[1] < 0 for c in system.coeffs)
            result = count_zeros(system)
            assert result.count == int(expected)
            assert result.certified == (n == 2)
            if expected:
                w = [math.log(-c[0] / c[1]) for c in system.coeffs]
                assert result.zeros[0] == pytest.approx(tuple(w), abs=1e-8)


def test_linear_system_in_two_variables():
    # x + y - 3 = 0 and x - y - 1 = 0 meet at x = 2, y = 1.
    system = FewnomialSystem((SIMPLEX, SIMPLEX), ((-3.0, 1.0, 1.0), (-1.0, 1.0, -1.0)))
    result = count_multivariate(system)
    assert result.count == 1
    assert result.certified
    assert result.zeros[0] == pytest.approx((math.log(2.0), 0.0), abs=1e-9)
    # x - y + 5 = 0 and x + y - 1 = 0 meet at x = -2.
    system = FewnomialSystem((SIMPLEX, SIMPLEX), ((5.0, 1.0, -1.0), (-1.0, 1.0, 1.0)))
    assert count_multivariate(system).count == 0


def test_zeros_lie_within_the_exclusion_radius():
    supports = (Support.of([(0, 0), (1, 0), (0, 1), (2, 1)]), Support.of([(0, 0), (2, 0), (1, 2)]))
    for seed in range(10):
        system = sample_gaussian(supports, seed)
        radius = exclusion_radius(system)
        result = count_zeros(system)
        if math.isfinite(radius):
            assert result.max_zero_norm <= radius * (1 + 1e-6) + 1e-6
        for z in result.zeros:
            assert np.allclose(system.eval_scaled(z)[0], 0.0, atol=1e-8)


def test_grid_oracle_finds_no_extra_zeros():
    supports = (Support.of([(0, 0), (1, 0), (1, 2)]), Support.of([(0, 0), (0, 1), (2, 1)]))
    for seed in range(6):
        system = sample_gaussian(supports, seed)
        result = count_zeros(system)
        if not math.isfinite(result.search_radius):
            continue
        grid = grid_zero_oracle(system, result.search_radius, resolution=300)
        assert grid.count <= result.count
        for z in grid.zeros:
            assert any(np.allclose(z, other, atol=1e-6) for other in result.zeros)


def test_degenerate_supports():
    collinear = (Support.of([(0, 0), (1, 1)]), Support.of([(0, 0), (2, 2), (3, 3)]))
    system = sample_gaussian(collinear, seed=0)
    assert count_zeros(system) == CountResult.from_zeros([], certified=True)
    with pytest.raises(DegenerateFanError):
        exclusion_radius(system)


def test_counting_rejects_four_variables():
    with pytest.raises(ValueError):
        count_zeros(sample_gaussian(segments(4), seed=0))


def test_count_options_parsing():
    assert CountOptions.from_json(None) == CountOptions()
    assert CountOptions.from_json({"max_radius": 10.0}).max_radius == 10.0
    with pytest.raises(ConfigError):
        CountOptions.from_json({"radius": 3})
    with pytest.raises(ConfigError):
        CountOptions(max_depth=0)


def test_count_result_consistency():
    with pytest.raises(ValueError):
        CountResult(count=2, certified=True, zeros=((0.0,),), max_zero_norm=0.0)
    result = CountResult.from_zeros([(3.0, 4.0), (0.0, 1.0)], certified=True)
    assert result.max_zero_norm == pytest.approx(5.0)
    assert result.zeros[0] == (0.0, 1.0)
    assert result.to_json()["search_radius"] is None


MIXED = (Support.of([(0, 0), (1, 0), (0, 1), (2, 1)]), Support.of([(0, 0), (2, 0), (1, 2)]))


def trusted(result: CountResult) -> bool:
    return result.certified and not result.discarded_degenerate


@pytest.mark.parametrize("name", ["translation", "unimodular", "real", "scaling"])
def test_counts_are_invariant_per_sample(name):
    rng = np.random.default_rng(17)
    compared = 0
    for seed in range(10):
        system = sample_gaussian(MIXED, seed)
        match name:
            case "translation":
                image = translate_support(system, [(2, -1), (-3, 4)])
            case "unimodular":
                image = gl_transform(system, [[1, 2], [0, -1]])
            case "real":
                image = gl_transform(system, rng.standard_normal((2, 2)) + 2 * np.eye(2))
            case "scaling":
                image = scale_coordinates(system, [2, -3])
        before, after = count_zeros(system), count_zeros(image)
        if trusted(before) and trusted(after):
            compared += 1
            assert before.count == after.count
    assert compared >= 5


def test_reported_zeros_are_simple_and_accurate():
    opts = CountOptions()
    for seed in range(10):
        system = sample_gaussian(MIXED, seed)
        result = count_zeros(system, opts)
        if result.discarded_degenerate:
            continue
        for z in result.zeros:
            w = np.asarray(z)
            residual, _ = system.eval_scaled(w)
            # Mantissas are scaled so the dominant monomial has size one.
            scale = [np.sum(np.abs(c) * (1.0 + np.linalg.norm(s.as_array(), axis=1)))
                     for s, c in zip(system.supports, system.coeffs)]
            bound = 10 * opts.newton_tol * max(1.0, float(np.linalg.norm(w))) * np.asarray(scale)
            assert np.all(np.abs(residual) <= np.maximum(bound, 1e-10))
            assert relative_jacobian_determinant(system, w) > opts.degeneracy_tol
