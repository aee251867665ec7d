"""Default experiment model running the catalog routines.

The runner owns the resolved configuration, hands out seeded generators
and Monte Carlo counts to the routines, stamps every report row with its
section and wall time, and emits the lifecycle events to its listeners.
"""

from dataclasses import dataclass, replace
from typing import Any, Sequence, override

import numpy as np

from fewlab.core.experiment_event import ExperimentEvent
from fewlab.core.experiment_model import ExperimentModel
from fewlab.utils.seeding import derive_seed
from fewlab.utils.timer_utils import Stopwatch

from ..geometry.support import Support
from ..kinematic.quadrature import KinematicEstimate, expected_zeros_kinematic
from .catalog import CATALOG
from .config import ExperimentConfig
from .sampling import CountStats, count_samples

__all__ = [
    "MAX_DEGENERATE_FRACTION",
    "ExperimentReport",
    "ExperimentRunner",
]


MAX_DEGENERATE_FRACTION = 0.001


@dataclass(frozen=True)
class ExperimentReport:
    """Rows of one run.

    Attributes:
        experiment: Catalog name.
        seed: Master seed in force.
        config: The result-determining configuration fields.
        rows: One dictionary per report row, including ``wall_time``.
        output_dir: Directory the report files go to.
    """

    experiment: str
    seed: int
    config: dict[str, Any]
    rows: tuple[dict[str, Any], ...]
    output_dir: str

    @property
    def passed(self) -> bool:
        return all(row.get("passed", True) for row in self.rows)

    def to_json(self) -> dict[str, Any]:
        """Deterministic content: wall times are left out."""
        return {
            "experiment": self.experiment,
            "seed": self.seed,
            "config": self.config,
            "passed": self.passed,
            "rows": [{k: v for k, v in row.items() if k != "wall_time"} for row in self.rows],
        }


class ExperimentRunner(ExperimentModel):
    """Concrete model executing catalog experiments.

    Attributes:
        config: The configuration of the current run.
        seed: Resolved master seed.
        workers: Resolved number of worker processes.
        rows: Rows recorded so far.
    """

    def __init__(self):
        super().__init__()
        self.config: ExperimentConfig | None = None
        self.seed = 0
        self.workers = 1
        self.rows: list[dict[str, Any]] = []
        self._section = ""
        self._watch = Stopwatch()

    @override
    def experiment_names(self) -> list[str]:
        return list(CATALOG)

    def describe(self) -> list[tuple[str, str]]:
        """Name and description of every experiment."""
        return [(e.name, e.description) for e in CATALOG.values()]

    @override
    def run(self, config: ExperimentConfig) -> ExperimentReport:
        """Run one experiment and return its report.

        `config.seed`, `config.workers` and `config.output_dir` should be
        resolved by the caller; missing values fall back to 0, 1 and
        ``./out``.
        """
        self.config = config
        self.seed = config.seed if config.seed is not None else 0
        self.workers = config.workers or 1
        self.rows = []
        self.begin({"experiment": config.experiment, "seed": self.seed,
                    "workers": self.workers})
        CATALOG[config.experiment].routine(self)
        report = ExperimentReport(config.experiment, self.seed, config.echo(),
                                  tuple(self.rows), config.output_dir or "out")
        self.end(report)
        return report

    def section(self, label: str) -> None:
        """Open a report section and restart its stopwatch."""
        self._section = label
        self._watch.reset()
        self.notify_listeners(ExperimentEvent.SECTION, label)

    def record(self, row: dict[str, Any]) -> None:
        """Add a finished row to the report.

        Rows whose degenerate fraction exceeds 0.1% fail.
        """
        row = {"experiment": self.config.experiment, "section": self._section, **row,
               "wall_time": self._watch.elapsed()}
        if row.get("degenerate_fraction", 0.0) > MAX_DEGENERATE_FRACTION:
            row["passed"] = False
            row["note"] = "too many degenerate samples"
        if "degenerate_fraction" in row:
            row["degeneracy_tol"] = self.config.count.degeneracy_tol
        self.rows.append(row)
        self.notify_listeners(ExperimentEvent.PROGRESS, row)

    def rng(self, stream: str) -> np.random.Generator:
        """A generator seeded from the master seed and a stream name."""
        return np.random.default_rng(derive_seed(self.seed, f"{self.config.experiment}:{stream}", 0))

    def counts(self, supports: Sequence[Support], stream: str, samples: int | None = None,
               multiplier=1) -> CountStats:
        """Monte Carlo zero counts for `config.samples` Gaussian systems."""
        return count_samples(supports, samples or self.config.samples, self.seed,
                             f"{self.config.experiment}:{stream}", self.config.count,
                             workers=self.workers, multiplier=multiplier)

    def kinematic(self, supports: Sequence[Support], stream: str) -> KinematicEstimate:
        """Kinematic estimate with the configured quadrature options."""
        seed = derive_seed(self.seed, f"{self.config.experiment}:{stream}", 0)
        opts = replace(self.config.quadrature, workers=self.workers)
        return expected_zeros_kinematic(supports, opts, seed % 2 ** 32)
