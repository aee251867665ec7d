"""Command-line interface (CLI) experiment event listener.

This module renders the progress of a run in the terminal and summarizes
the finished report with a table and a bar chart of estimates against
their bounds.
"""

import math
import sys
from typing import Any, override

import pandas as pd
from tabulate import tabulate
import plotext as plt

from fewlab.core.experiment_event import ExperimentEvent
from fewlab.core.experiment_listener import ExperimentListener

from .experiment_runner import ExperimentReport

__all__ = [
    "SUMMARY_COLUMNS",
    "ExperimentListenerCLI",
]


SUMMARY_COLUMNS = ["section", "estimate", "std_error", "reference", "kinematic",
                   "thm_mixed", "certified_fraction", "degenerate_fraction", "passed"]


class ExperimentListenerCLI(ExperimentListener):
    """Terminal view of an experiment run.

    Attributes:
        quiet: Only the final summary is printed when True.
        plots: Whether the terminal bar chart is drawn.
    """

    def __init__(self, quiet: bool = False, plots: bool = True):
        """Initialize the CLI listener."""
        super().__init__()
        self.quiet = quiet
        self.plots = plots

    def print_results_table(self, report: ExperimentReport) -> None:
        """Print the main columns of the report rows using `tabulate`."""
        df = pd.DataFrame(list(report.rows))
        columns = [c for c in SUMMARY_COLUMNS if c in df.columns]
        print(tabulate(
            df[columns],
            headers="keys",
            tablefmt="rounded_outline",
            showindex=False,
            floatfmt=".5g"
        ))

    def print_results_plot(self, report: ExperimentReport) -> None:
        """Bar chart of estimates next to the mixed bound, with `plotext`."""
        rows = [r for r in report.rows if r.get("thm_mixed") is not None
                and isinstance(r.get("estimate"), float) and math.isfinite(r["estimate"])]
        if not rows:
            return
        plt.clear_figure()
        plt.multiple_bar(
            [r["section"] for r in rows],
            [[r["estimate"] for r in rows], [r["thm_mixed"] for r in rows]],
            labels=["estimate", "mixed bound"],
            width=100,
            title=f"{report.experiment}: estimates and bounds"
        )
        print("\n")
        plt.show()

    @override
    def on_event(self, e: ExperimentEvent, args: Any | None = None) -> None:
        match e:

            case ExperimentEvent.BEGIN:
                if args is not None:
                    print(f"Running {args['experiment']} "
                          f"(seed {args['seed']}, {args['workers']} worker(s))")

            case ExperimentEvent.SECTION:
                if not self.quiet and args is not None:
                    print(f"  {args} ...", end="", flush=True)

            case ExperimentEvent.PROGRESS:
                if not self.quiet and args is not None:
                    verdict = "ok" if args.get("passed", True) else "FAILED"
                    print(f" {verdict} ({args['wall_time']:.1f} s)")

            case ExperimentEvent.INFO:
                if args is not None:
                    for arg in args:
                        print(arg)

            case ExperimentEvent.END:
                if isinstance(args, ExperimentReport):
                    self.print_results_table(args)
                    if self.plots:
                        try:
                            self.print_results_plot(args)
                        except Exception as ex:
                            print(f"Could not draw the terminal plot: {ex}", file=sys.stderr)
                    print("All checks passed." if args.passed else "Some checks FAILED.")
