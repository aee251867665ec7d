"""Report files written at the end of a run.

* ``report.json``: configuration echo and rows, without wall times, so
  that equal configurations and seeds give byte-identical files.
* ``report.csv``: the rows in a fixed column order, preceded by a schema
  comment line.
* ``timing.json``: wall time per section.
* ``<experiment>.svg``: estimates against references with error bars.
"""

import json
import math
import os
import sys
from typing import Any, override

import numpy as np
import pandas as pd
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from fewlab.core.experiment_event import ExperimentEvent
from fewlab.core.experiment_listener import ExperimentListener

from .experiment_runner import ExperimentReport

__all__ = [
    "CSV_SCHEMA_VERSION",
    "CSV_COLUMNS",
    "report_json",
    "write_report_json",
    "write_report_csv",
    "write_timing",
    "write_plot",
    "ReportWriter",
]


CSV_SCHEMA_VERSION = 1
CSV_COLUMNS = (
    "experiment", "section", "n", "t", "v0", "multiplier", "samples",
    "estimate", "std_error", "reference", "reference_error",
    "kinematic", "kinematic_error", "mean_count",
    "certified_fraction", "degenerate_fraction", "degeneracy_tol",
    "thm_mixed", "prop_unmixed", "betc_unmixed", "jindal", "lower_bound_ref",
    "mvr_product", "product_form", "kushnirenko_ref", "conjecture_scale",
    "passed", "note", "wall_time",
)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def report_json(report: ExperimentReport) -> str:
    """The deterministic JSON text of a report."""
    return json.dumps(_plain(report.to_json()), indent=2, sort_keys=True) + "\n"


def write_report_json(report: ExperimentReport, directory: str) -> str:
    path = os.path.join(directory, "report.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write(report_json(report))
    return path


def write_report_csv(report: ExperimentReport, directory: str) -> str:
    """Write the rows with the versioned schema header."""
    path = os.path.join(directory, "report.csv")
    df = pd.DataFrame([{c: _plain(row.get(c)) for c in CSV_COLUMNS} for row in report.rows],
                      columns=list(CSV_COLUMNS))
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# fewnomial-lab report schema v{CSV_SCHEMA_VERSION}\n")
        df.to_csv(f, index=False)
    return path


def write_timing(report: ExperimentReport, directory: str) -> str:
    path = os.path.join(directory, "timing.json")
    timing = {row["section"]: row.get("wall_time", 0.0) for row in report.rows}
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"experiment": report.experiment, "sections": timing}, f, indent=2)
    return path


def write_plot(report: ExperimentReport, directory: str) -> str | None:
    """Plot estimates with error bars against references and bounds.

    Returns:
        The SVG path, or None when no row has an estimate.
    """
    rows = [r for r in report.rows if isinstance(r.get("estimate"), (int, float))
            and math.isfinite(r["estimate"])]
    if not rows:
        return None
    x = np.arange(len(rows))
    fig, ax = plt.subplots(figsize=(max(6.0, 0.4 * len(rows)), 4.0))
    ax.errorbar(x, [r["estimate"] for r in rows],
                yerr=[3.0 * (r.get("std_error") or 0.0) for r in rows],
                fmt="o", capsize=3, label="estimate (3 sigma)")
    for key, marker in (("reference", "x"), ("thm_mixed", "_"), ("kinematic", "s")):
        points = [(i, r[key]) for i, r in zip(x, rows) if r.get(key) is not None]
        if points:
            xs, ys = zip(*points)
            ax.plot(xs, ys, marker, linestyle="none", label=key)
    ax.set_xticks(x, [r["section"] for r in rows], rotation=60, ha="right", fontsize=7)
    ax.set_title(report.experiment)
    ax.legend(fontsize=7)
    fig.tight_layout()
    path = os.path.join(directory, f"{report.experiment}.svg")
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


class ReportWriter(ExperimentListener):
    """Listener writing the report files when a run ends.

    Attributes:
        plots: Whether the SVG plot is written.
        written: Paths written by the last run.
    """

    def __init__(self, plots: bool = True):
        super().__init__()
        self.plots = plots
        self.written: list[str] = []

    @override
    def on_event(self, e: ExperimentEvent, args: Any | None = None) -> None:
        match e:
            case ExperimentEvent.END:
                if isinstance(args, ExperimentReport):
                    self.write(args)
            case _:
                pass

    def write(self, report: ExperimentReport) -> list[str]:
        """Write every report file; plotting failures only warn.

        Raises:
            OSError: If the directory or the tables cannot be written.
        """
        os.makedirs(report.output_dir, exist_ok=True)
        self.written = [write_report_json(report, report.output_dir),
                        write_report_csv(report, report.output_dir),
                        write_timing(report, report.output_dir)]
        if self.plots:
            try:
                path = write_plot(report, report.output_dir)
                if path is not None:
                    self.written.append(path)
            except Exception as e:
                print(f"Could not write plot: {e}", file=sys.stderr)
        return self.written
