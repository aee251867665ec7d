import math

import pytest

from fewlab.geometry import Support
from fewlab.bounds import (
    axis_factors,
    bound_betc_unmixed,
    bound_jindal,
    bound_mixed,
    bound_report,
    bound_unmixed,
    conjecture_reference_scale,
    kushnirenko_reference,
    lower_bound_reference,
    mvr_product_identity,
    product_factors,
    product_form_bound,
    projective_volume,
    rho,
    rho_product,
    sum_vertex_count,
)


def segments(n: int) -> list[Support]:
    return [Support.of([(0,) * n, tuple(int(j == i) for j in range(n))]) for i in range(n)]


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_mixed_bound_of_segments(n):
    assert bound_mixed(n, [2] * n, 2 ** n) == pytest.approx((2 / math.pi) ** (n / 2))


def test_mixed_bound_values():
    assert bound_mixed(1, [3], 2) == pytest.approx(4 / math.sqrt(2 * math.pi))
    assert bound_mixed(1, [3], 2) == pytest.approx(1.59577, abs=1e-5)
    assert bound_mixed(2, [1, 5], 3) == 0.0
    with pytest.raises(ValueError):
        bound_mixed(2, [3], 4)
    with pytest.raises(ValueError):
        bound_mixed(1, [0], 1)


def test_unmixed_bound_values():
    assert projective_volume(1) == pytest.approx(math.pi)
    assert projective_volume(2) == pytest.approx(2 * math.pi)
    assert bound_unmixed(1, 3, 2) == pytest.approx(4 / math.pi)
    assert bound_unmixed(2, 4, 4) == pytest.approx(6 / math.pi)
    assert bound_unmixed(3, 3, 4) == 0.0


def test_earlier_unmixed_bound():
    assert bound_betc_unmixed(1, 3) == pytest.approx(3.0)
    assert bound_betc_unmixed(2, 4) == pytest.approx(3.0)
    assert bound_betc_unmixed(4, 3) == 0.0


def test_unmixed_bound_loses_ground_as_n_grows():
    ratios = [bound_unmixed(n, n + 2, n + 1) / bound_betc_unmixed(n, n + 2) for n in range(1, 7)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[0] < 1 < ratios[-1]


def test_univariate_bound():
    assert bound_jindal(2) == pytest.approx(2 / math.pi)
    assert bound_jindal(5) == pytest.approx(4 / math.pi)
    assert bound_jindal(1) == 0.0


def test_product_identity():
    assert mvr_product_identity([0.5, 0.5]) == pytest.approx(math.pi / 8)
    assert mvr_product_identity([0.5]) == pytest.approx(0.5)
    assert mvr_product_identity([0.0, 0.7]) == 0.0
    with pytest.raises(ValueError):
        mvr_product_identity([])


def test_gaussian_norm_means():
    assert rho(1) == pytest.approx(math.sqrt(2 / math.pi))
    assert rho(2) == pytest.approx(math.sqrt(math.pi / 2))
    assert rho_product(2) == pytest.approx(1.0)
    assert rho_product(3) == pytest.approx(rho(1) * rho(2) * rho(3))


def test_formulas_stay_finite_for_large_inputs():
    assert math.isfinite(bound_unmixed(60, 400, 10 ** 6))
    assert math.isfinite(bound_betc_unmixed(60, 400))
    assert math.isfinite(product_form_bound(80, 10 ** 6))
    assert rho(500) == pytest.approx(math.sqrt(500), rel=1e-3)


def test_reference_scales():
    assert kushnirenko_reference([3, 4]) == 6.0
    assert conjecture_reference_scale([4, 9]) == pytest.approx(6.0)


def test_sum_vertex_count():
    assert sum_vertex_count(segments(3)) == 8
    assert sum_vertex_count([Support.of([(0, 0), (2, 0), (0, 2), (1, 1)])]) == 3


def test_axis_and_product_factors():
    assert [f.points for f in axis_factors(segments(2))] == [((0,), (1,)), ((0,), (1,))]
    assert axis_factors([Support.of([(0, 0), (1, 1)]), Support.of([(0, 0), (0, 1)])]) is None
    square = Support.of([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert len(product_factors(square)) == 2
    assert product_factors(Support.of([(0, 0), (1, 0), (0, 1)])) is None


def test_report_of_segments():
    report = bound_report(segments(2))
    assert report.v0 == 4
    assert report.thm_mixed == pytest.approx(2 / math.pi)
    assert report.lower_bound_ref == pytest.approx(0.25, abs=1e-5)
    assert report.prop_unmixed is None
    assert "prop_unmixed" not in report.to_json()
    assert report.lower_bound_ref <= report.thm_mixed


def test_report_of_a_shared_product_support():
    factor = [0, 1, 3]
    support = Support.of([(a, b) for a in factor for b in factor])
    report = bound_report([support, support])
    assert report.t == (9, 9)
    assert report.v0 == 4
    assert report.mvr_product is not None
    assert report.mvr_product <= report.thm_mixed
    assert report.mvr_product <= report.prop_unmixed
    assert report.product_form == pytest.approx(product_form_bound(2, 9))


def test_univariate_report():
    report = bound_report([Support.of([(0,), (1,), (5,)])])
    assert report.jindal == pytest.approx(bound_jindal(3))
    assert report.lower_bound_ref <= report.jindal
    assert report.to_json()["t"] == [3]


def test_lower_bound_reference_needs_axis_separated_supports():
    assert lower_bound_reference(segments(3)) == pytest.approx(0.125, abs=1e-6)
    assert lower_bound_reference([Support.of([(0, 0), (1, 1)]), Support.of([(0, 0), (0, 1)])]) is None


def test_mixed_bound_ignores_the_order_of_the_supports():
    sizes = [3, 5, 4, 7]
    base = bound_mixed(4, sizes, 20)
    for perm in ([7, 4, 5, 3], [4, 3, 7, 5], [5, 7, 3, 4]):
        assert bound_mixed(4, perm, 20) == pytest.approx(base, rel=1e-12)


@pytest.mark.parametrize("m", range(1, 12))
def test_projective_volume_ratio(m):
    ratio = projective_volume(m - 1) / projective_volume(m)
    assert abs(ratio - rho(m) / math.sqrt(2 * math.pi)) < 1e-10


@pytest.mark.parametrize("n", range(1, 6))
def test_gaussian_norm_product_identity(n):
    assert abs(rho_product(n) - (2 * math.pi) ** (n / 2) / projective_volume(n)) < 1e-10
