"""The named experiments.

Every routine receives the running `ExperimentRunner`, opens one report
section per configuration with `runner.section` and hands each finished
row to `runner.record`. Rows carry a boolean ``passed`` verdict; the run
succeeds when every row passes.

Each routine documents the `params` keys it reads.
"""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Sequence

import numpy as np

from ..bounds.bound_report import BoundReport, bound_report
from ..bounds.closed_forms import (bound_betc_unmixed, bound_jindal, bound_unmixed,
                                   mvr_product_identity, projective_volume, rho, rho_product)
from ..cones.char_function import char_function, char_function_mc, crucial_inequality
from ..cones.proper_cone import ProperCone, dual_cone
from ..cones.sigma import SubspacePair, projection_determinant, sigma, sigma_many
from ..counting.multivariate import count_zeros
from ..counting.univariate import ek_expected_univariate
from ..fewnomial.system import sample_gaussian
from ..fewnomial.transforms import gl_transform, scale_coordinates, translate_support
from ..geometry.minkowski import fan_cover_check
from ..geometry.polytope import hull_vertices
from ..geometry.support import Support
from ..kinematic.quadrature import KinematicEstimate
from ..kinematic.selftests import (gaussian_det_moment, projected_moment_check,
                                   segre_isometry_check)
from ..kinematic.tangent import chart_derivative_norm
from ..utils.parallel import ordered_map
from ..utils.seeding import derive_seed
from .config import (EXPERIMENT_NAMES, SupportSpec, product_supports,
                     random_integer_supports, segment_supports)
from .sampling import CountStats

if TYPE_CHECKING:
    from .experiment_runner import ExperimentRunner

__all__ = [
    "SIGMAS",
    "MIN_COMPARED_FRACTION",
    "Experiment",
    "CATALOG",
    "experiment",
    "bound_fields",
    "kinematic_fields",
    "counts_agree",
    "below",
    "kinematic_agrees",
    "example_2n",
    "jindal_sweep",
    "ek_vs_counting",
    "mixed_bound_sweep",
    "mvr_product",
    "unmixed_compare",
    "concentration",
    "cone_identities",
    "invariance_task",
    "invariance_verdict",
    "invariance",
]


SIGMAS = 3.0
MIN_COMPARED_FRACTION = 0.5


@dataclass(frozen=True)
class Experiment:
    """A catalog entry."""

    name: str
    description: str
    routine: Callable[["ExperimentRunner"], None]


CATALOG: dict[str, Experiment] = {}


def experiment(name: str, description: str):
    """Register a routine under a catalog name."""
    if name not in EXPERIMENT_NAMES:
        raise ValueError(f"{name!r} is not a known experiment name")

    def register(routine):
        CATALOG[name] = Experiment(name, description, routine)
        return routine

    return register


def bound_fields(report: BoundReport) -> dict[str, Any]:
    return {"n": report.n, "t": "x".join(map(str, report.t)), "v0": report.v0,
            **report.values()}


def kinematic_fields(est: KinematicEstimate) -> dict[str, Any]:
    return {"kinematic": est.value, "kinematic_error": est.combined_error}


def counts_agree(stats: CountStats, reference: float, reference_error: float = 0.0) -> bool:
    return abs(stats.mean - reference) <= SIGMAS * math.hypot(stats.std_error, reference_error)


def below(stats: CountStats, bound: float) -> bool:
    return stats.mean <= bound + SIGMAS * stats.std_error


def kinematic_agrees(est: KinematicEstimate, stats: CountStats) -> bool:
    spread = math.hypot(stats.std_error, est.std_error, est.quadrature_error) + est.tail_bound
    return abs(est.value - stats.mean) <= SIGMAS * spread


@experiment("example-2n", "Segments A_i = {0, e_i}: the mean count is 2^-n")
def example_2n(runner: "ExperimentRunner") -> None:
    """Params: ``n_values`` (default [1, 2, 3]), ``kinematic_n`` (default [1, 2])."""
    params = runner.config.params
    for n in params.get("n_values", [1, 2, 3]):
        runner.section(f"n={n}")
        supports = segment_supports(n)
        stats = runner.counts(supports, f"n{n}")
        p = 2.0 ** -n
        binomial = math.sqrt(p * (1.0 - p) / max(stats.kept, 1))
        bounds = bound_report(supports)
        runner.record({
            **bound_fields(bounds), **stats.row(),
            "reference": p, "reference_error": binomial,
            "passed": abs(stats.mean - p) <= SIGMAS * binomial and below(stats, bounds.thm_mixed),
        })
    for n in params.get("kinematic_n", [1, 2]):
        runner.section(f"kinematic n={n}")
        supports = segment_supports(n)
        est = runner.kinematic(supports, f"kinematic{n}")
        p = 2.0 ** -n
        runner.record({
            "n": n, "estimate": est.value, "std_error": est.combined_error,
            "reference": p, "passed": abs(est.value - p) <= SIGMAS * est.combined_error,
            **kinematic_fields(est),
        })


@experiment("jindal-sweep", "Random univariate supports of growing size against (2/pi) sqrt(t-1)")
def jindal_sweep(runner: "ExperimentRunner") -> None:
    """Params: ``t_values`` (default 2..20), ``box`` (default 40)."""
    params = runner.config.params
    box = int(params.get("box", 40))
    for t in params.get("t_values", list(range(2, 21))):
        runner.section(f"t={t}")
        spec = SupportSpec(n=1, sizes=(t,), box=box, min_size=1, max_size=max(t, 1))
        supports = random_integer_supports(spec, runner.rng(f"t{t}"))
        stats = runner.counts(supports, f"t{t}")
        ek = ek_expected_univariate(supports[0])
        jindal = bound_jindal(t)
        runner.record({
            **bound_fields(bound_report(supports)), **stats.row(), "reference": ek,
            "passed": below(stats, jindal) and ek <= jindal,
        })


@experiment("ek-vs-counting", "Univariate counting against the exact expected count")
def ek_vs_counting(runner: "ExperimentRunner") -> None:
    """Params: ``box`` (default 30), ``max_size`` (default 10),
    ``kinematic`` (default True), ``kinematic_tol`` (default 1e-2)."""
    config = runner.config
    params = config.params
    spec = config.supports or SupportSpec(n=1, min_size=2, max_size=int(params.get("max_size", 10)),
                                          box=int(params.get("box", 30)))
    if spec.n != 1:
        raise ValueError("ek-vs-counting needs univariate supports")
    rng = runner.rng("supports")
    tol = float(params.get("kinematic_tol", 1e-2))
    for c in range(config.configurations or 20):
        runner.section(f"config {c}")
        supports = spec.build(rng)
        stats = runner.counts(supports, f"config{c}")
        ek = ek_expected_univariate(supports[0])
        jindal = bound_jindal(len(supports[0]))
        row = {**bound_fields(bound_report(supports)), **stats.row(), "reference": ek}
        passed = counts_agree(stats, ek) and ek <= jindal and below(stats, jindal)
        if params.get("kinematic", True):
            est = runner.kinematic(supports, f"kinematic{c}")
            row.update(kinematic_fields(est))
            passed = passed and abs(est.value - ek) <= tol
        runner.record({**row, "passed": passed})


@experiment("mixed-bound-sweep", "Random mixed n = 2 supports against the mixed bound")
def mixed_bound_sweep(runner: "ExperimentRunner") -> None:
    """Params: ``kinematic_configurations`` (default 10)."""
    config = runner.config
    spec = config.supports or SupportSpec(n=2, min_size=2, max_size=5, box=6)
    rng = runner.rng("supports")
    with_kinematic = int(config.params.get("kinematic_configurations", 10))
    for c in range(config.configurations or 30):
        runner.section(f"config {c}")
        supports = spec.build(rng)
        bounds = bound_report(supports)
        stats = runner.counts(supports, f"config{c}")
        row = {**bound_fields(bounds), **stats.row()}
        passed = below(stats, bounds.thm_mixed)
        if c < with_kinematic:
            est = runner.kinematic(supports, f"kinematic{c}")
            row.update(kinematic_fields(est))
            passed = passed and kinematic_agrees(est, stats)
        runner.record({**row, "passed": passed})


@experiment("mvr-product", "Shared product support: counting and kinematic against the product identity")
def mvr_product(runner: "ExperimentRunner") -> None:
    """Params: ``factors`` (default [[0, 1, 3], [0, 1, 3]]), ``kinematic`` (default True)."""
    params = runner.config.params
    factors = params.get("factors", [[0, 1, 3], [0, 1, 3]])
    runner.section("product")
    supports = product_supports(factors)
    bounds = bound_report(supports)
    identity = mvr_product_identity(
        [ek_expected_univariate(f) for f in _univariate(factors)])
    stats = runner.counts(supports, "product")
    row = {**bound_fields(bounds), **stats.row(), "reference": identity}
    passed = counts_agree(stats, identity) and below(stats, bounds.thm_mixed)
    if params.get("kinematic", True):
        est = runner.kinematic(supports, "kinematic")
        row.update(kinematic_fields(est))
        passed = passed and abs(est.value - identity) <= SIGMAS * est.combined_error
    runner.record({**row, "passed": passed})


def _univariate(factors) -> list[Support]:
    return [Support.of([(x,) for x in f]) for f in factors]


@experiment("unmixed-compare", "The unmixed bound against 2^(1-n) C(t, n) as n grows")
def unmixed_compare(runner: "ExperimentRunner") -> None:
    """Params: ``pairs`` of [n, t] (default [n, n + 2] for n = 1..6),
    ``weaker_from`` (default 5).

    Both bounds are evaluated for a simplex hull, V_0 = n + 1. From
    ``n = weaker_from`` on, the unmixed bound must exceed the earlier one.
    """
    params = runner.config.params
    pairs = params.get("pairs", [[n, n + 2] for n in range(1, 7)])
    weaker_from = int(params.get("weaker_from", 5))
    ratios = []
    for n, t in pairs:
        runner.section(f"n={n} t={t}")
        prop = bound_unmixed(n, t, n + 1)
        betc = bound_betc_unmixed(n, t)
        ratio = prop / betc if betc > 0 else math.inf
        ratios.append(ratio)
        checked = n >= weaker_from
        runner.record({"n": n, "t": str(t), "v0": n + 1, "prop_unmixed": prop,
                       "betc_unmixed": betc, "estimate": ratio, "reference": 1.0,
                       "note": "prop > betc" if checked else "",
                       "passed": prop > betc if checked else True})
    runner.section("trend")
    increasing = all(a < b for a, b in zip(ratios, ratios[1:]))
    runner.record({"estimate": ratios[-1] if ratios else math.nan,
                   "reference": ratios[0] if ratios else math.nan,
                   "note": "ratio increases with n", "passed": increasing})


@experiment("concentration", "Stretched supports: zeros concentrate near the origin")
def concentration(runner: "ExperimentRunner") -> None:
    """Params: ``multipliers`` (default [1, 2, 4, 8]), ``epsilon`` (default 0.5)."""
    config = runner.config
    params = config.params
    spec = config.supports or SupportSpec(
        kind="explicit", points=(((0, 0), (1, 0), (0, 1), (2, 2)), ((0, 0), (2, 1), (1, 2), (1, 0))))
    supports = spec.build(runner.rng("supports"))
    epsilon = float(params.get("epsilon", 0.5))
    fractions = []
    for m in params.get("multipliers", [1, 2, 4, 8]):
        runner.section(f"m={m}")
        stats = runner.counts(supports, "base", multiplier=m)
        fraction = stats.fraction_beyond(epsilon)
        fractions.append(fraction)
        runner.record({**stats.row(), "n": len(supports), "multiplier": m,
                       "estimate": fraction, "mean_count": stats.mean, "passed": True})
    runner.section("trend")
    monotone = all(b <= a for a, b in zip(fractions, fractions[1:]))
    runner.record({"estimate": fractions[-1], "reference": fractions[0],
                   "note": "non-increasing, last below half the first",
                   "passed": monotone and fractions[-1] < 0.5 * fractions[0]})


def _random_simplicial(rng: np.random.Generator, n: int) -> ProperCone:
    while True:
        gens = rng.standard_normal((n, n))
        if abs(np.linalg.det(gens)) > 0.1:
            return ProperCone.of(gens)


@experiment("cone-identities", "Characteristic function, crucial inequality, sigma and moment identities")
def cone_identities(runner: "ExperimentRunner") -> None:
    """Params: ``cones`` (50), ``mc_samples`` (20000), ``crucial_draws`` (1000),
    ``det_samples`` (1000000), ``segre_samples`` (16)."""
    params = runner.config.params
    rng = runner.rng("cones")

    runner.section("char-function")
    worst = 0.0
    for k in range(int(params.get("cones", 50))):
        n = int(rng.integers(1, 5))
        cone = _random_simplicial(rng, n)
        x = rng.uniform(0.5, 2.0, n) @ dual_cone(cone).as_array()
        exact = char_function(cone, x).value
        mc = char_function_mc(cone, x, samples=int(params.get("mc_samples", 20_000)),
                              seed=derive_seed(runner.seed, "char-function", k))
        worst = max(worst, abs(mc.value - exact) / max(mc.std_error, 1e-300))
    runner.record({"estimate": worst, "reference": SIGMAS, "note": "largest deviation in stderr",
                   "passed": worst <= SIGMAS})

    runner.section("crucial-inequality")
    worst = 0.0
    holds = True
    for _ in range(int(params.get("crucial_draws", 1000))):
        n = int(rng.integers(1, 5))
        cone = _random_simplicial(rng, n)
        b = rng.exponential(size=(n, n)) @ dual_cone(cone).as_array()
        lhs, ok = crucial_inequality(cone, b)
        worst = max(worst, lhs)
        holds = holds and ok
    runner.record({"estimate": worst, "reference": 1.0, "passed": holds})

    runner.section("crucial-equality")
    gap = 0.0
    for n in range(1, 5):
        lhs, _ = crucial_inequality(ProperCone.orthant(n), np.diag(rng.uniform(0.2, 5.0, n)))
        gap = max(gap, abs(lhs - 1.0))
    runner.record({"estimate": gap, "reference": 1e-9, "passed": gap < 1e-9})

    runner.section("sigma")
    gap = 0.0
    for k in range(20):
        n = int(rng.integers(2, 6))
        pair = SubspacePair.random(n, int(rng.integers(1, n)), seed=derive_seed(runner.seed, "sigma", k))
        value = sigma(pair)
        comp = pair.complement()
        w = pair.w
        gap = max(gap, abs(value - sigma(pair.swapped())), abs(value - sigma(comp)),
                  abs(sigma(comp) - projection_determinant(pair)),
                  abs(value - sigma_many(pair.v, [w[j:j + 1] for j in range(len(w))])))
    runner.record({"estimate": gap, "reference": 1e-10, "passed": gap < 1e-10})

    samples = int(params.get("det_samples", 1_000_000))
    for n in range(1, 5):
        runner.section(f"gaussian-det n={n}")
        moment = gaussian_det_moment(n, samples, seed=derive_seed(runner.seed, "det", n))
        target = rho_product(n)
        identity = abs(target - (2 * math.pi) ** (n / 2) / projective_volume(n))
        ratio = abs(projective_volume(n - 1) / projective_volume(n) - rho(n) / math.sqrt(2 * math.pi))
        runner.record({"n": n, "estimate": moment.value, "std_error": moment.std_error,
                       "reference": target, "samples": samples,
                       "passed": moment.within(target, SIGMAS) and identity < 1e-10 and ratio < 1e-10})

    runner.section("segre")
    worst = max(segre_isometry_check(m, n, int(params.get("segre_samples", 16)),
                                     seed=derive_seed(runner.seed, "segre", 10 * m + n))
                for m in range(1, 5) for n in range(1, 5))
    runner.record({"estimate": worst, "reference": 1e-5, "passed": worst < 1e-5})

    runner.section("projected-moment")
    moment = projected_moment_check(6, seed=derive_seed(runner.seed, "projected", 0))
    runner.record({"estimate": moment.value, "std_error": moment.std_error, "reference": 1.0,
                   "passed": moment.value <= 1.0 + SIGMAS * moment.std_error})

    runner.section("chart-contraction")
    norms = [chart_derivative_norm(rng.standard_normal(int(rng.integers(1, 6))) * 10.0)
             for _ in range(100)]
    runner.record({"estimate": max(norms), "reference": 1.0, "passed": max(norms) <= 1.0 + 1e-12})

    runner.section("fan-cover")
    spec = SupportSpec(n=2, min_size=3, max_size=5, box=6)
    covered = all(fan_cover_check([hull_vertices(s) for s in spec.build(rng)], samples=2000,
                                  seed=derive_seed(runner.seed, "fan", k))
                  for k in range(10))
    runner.record({"estimate": float(covered), "reference": 1.0, "passed": covered})


def invariance_task(task) -> tuple[tuple[int, bool], ...]:
    """Counts of one sample and of its transformed copies."""
    supports, seed, opts, shifts, g, g_real, factors = task
    system = sample_gaussian(supports, seed)
    variants = (system, translate_support(system, shifts), gl_transform(system, g),
                gl_transform(system, g_real), scale_coordinates(system, factors))
    out = []
    for variant in variants:
        result = count_zeros(variant, opts)
        out.append((result.count, result.certified and not result.discarded_degenerate))
    return tuple(out)


def _unimodular(rng: np.random.Generator, n: int) -> list[list[int]]:
    g = np.eye(n, dtype=int)
    for _ in range(3):
        i, j = rng.choice(n, size=2, replace=False)
        g[i] += int(rng.integers(-2, 3)) * g[j]
    return [[int(x) for x in row] for row in g[rng.permutation(n)]]


def _gaussian_invertible(rng: np.random.Generator, n: int) -> list[list[float]]:
    while True:
        g = rng.standard_normal((n, n))
        if np.linalg.cond(g) < 50.0:
            return g.tolist()


def invariance_verdict(pairs: Sequence[tuple[tuple[int, bool], tuple[int, bool]]]) -> dict[str, Any]:
    """Row fields for one transformation, given (original, image) count pairs.

    Only pairs where both counts are trusted are compared, and at least
    MIN_COMPARED_FRACTION of the samples must be comparable for a pass.
    """
    compared = [(a[0], b[0]) for a, b in pairs if a[1] and b[1]]
    agree = sum(a == b for a, b in compared)
    fraction = len(compared) / len(pairs) if pairs else 0.0
    return {"samples": len(pairs), "estimate": agree / max(len(compared), 1),
            "reference": 1.0, "certified_fraction": fraction,
            "passed": fraction >= MIN_COMPARED_FRACTION and agree == len(compared)}


@experiment("invariance", "Zero counts under translation, linear maps and coordinate scaling")
def invariance(runner: "ExperimentRunner") -> None:
    """Params: none; `configurations` random systems (default 100)."""
    config = runner.config
    spec = config.supports or SupportSpec(n=2, min_size=2, max_size=4, box=4)
    rng = runner.rng("supports")
    tasks = []
    for k in range(config.configurations or 100):
        supports = spec.build(rng)
        n = len(supports)
        shifts = [[int(x) for x in rng.integers(-3, 4, n)] for _ in range(n)]
        factors = [int(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(n)]
        tasks.append((supports, derive_seed(runner.seed, "invariance", k), config.count,
                      shifts, _unimodular(rng, n), _gaussian_invertible(rng, n), factors))
    results = ordered_map(invariance_task, tasks, workers=runner.workers)
    for i, name in enumerate(("translation", "linear", "linear-real", "scaling"), start=1):
        runner.section(name)
        runner.record(invariance_verdict([(r[0], r[i]) for r in results]))


if set(CATALOG) != set(EXPERIMENT_NAMES):
    raise RuntimeError("Experiment catalog and names are out of sync")
