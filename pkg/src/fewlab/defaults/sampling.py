"""Monte Carlo zero counts over Gaussian coefficient samples."""

import math
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from ..counting.count_options import CountOptions
from ..counting.multivariate import count_zeros
from ..fewnomial.system import sample_gaussian
from ..fewnomial.transforms import stretch
from ..geometry.support import Support
from ..utils.parallel import ordered_map
from ..utils.seeding import derive_seed

__all__ = [
    "CountStats",
    "count_task",
    "count_samples",
]


@dataclass(frozen=True)
class CountStats:
    """Zero counts of one configuration.

    Degenerate samples are left out of the mean and its standard error.

    Attributes:
        samples: Samples drawn.
        kept: Samples entering the estimate.
        mean: Mean count.
        std_error: Standard error of the mean.
        certified_fraction: Fraction of certified counts.
        degenerate_fraction: Fraction of discarded samples.
        counts: Count per sample, -1 for discarded ones.
        max_norms: Largest zero norm per sample.
    """

    samples: int
    kept: int
    mean: float
    std_error: float
    certified_fraction: float
    degenerate_fraction: float
    counts: tuple[int, ...]
    max_norms: tuple[float, ...]

    def row(self) -> dict[str, Any]:
        return {
            "samples": self.samples,
            "estimate": self.mean,
            "std_error": self.std_error,
            "certified_fraction": self.certified_fraction,
            "degenerate_fraction": self.degenerate_fraction,
        }

    def fraction_beyond(self, radius: float) -> float:
        """Fraction of kept samples with a zero of norm above `radius`."""
        kept = [r for c, r in zip(self.counts, self.max_norms) if c >= 0]
        if not kept:
            return 0.0
        return sum(r > radius for r in kept) / len(kept)


def count_task(task) -> tuple[int, bool, bool, float]:
    """Count the zeros of one sampled system."""
    supports, seed, opts, multiplier = task
    system = sample_gaussian(supports, seed)
    if multiplier != 1:
        system = stretch(system, multiplier)
    result = count_zeros(system, opts)
    return result.count, result.certified, result.discarded_degenerate, result.max_zero_norm


def count_samples(supports: Sequence[Support], samples: int, master_seed: int, stream: str,
                  opts: CountOptions, workers: int = 1, multiplier=1) -> CountStats:
    """Count zeros of `samples` Gaussian systems with the given supports.

    Sample k uses ``derive_seed(master_seed, stream, k)``, so the result does
    not depend on `workers`.
    """
    supports = tuple(supports)
    tasks = [(supports, derive_seed(master_seed, stream, k), opts, multiplier)
             for k in range(samples)]
    results = ordered_map(count_task, tasks, workers=workers)
    counts = np.array([c for c, _, d, _ in results if not d], dtype=float)
    degenerate = sum(d for _, _, d, _ in results)
    kept = len(counts)
    mean = float(counts.mean()) if kept else math.nan
    std_error = float(counts.std(ddof=1) / math.sqrt(kept)) if kept > 1 else 0.0
    return CountStats(
        samples=samples,
        kept=kept,
        mean=mean,
        std_error=std_error,
        certified_fraction=sum(c for _, c, _, _ in results) / samples,
        degenerate_fraction=degenerate / samples,
        counts=tuple(-1 if d else c for c, _, d, _ in results),
        max_norms=tuple(r for _, _, _, r in results),
    )
