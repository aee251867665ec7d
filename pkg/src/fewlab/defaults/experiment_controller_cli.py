"""Command-line interface (CLI) experiment controller.

This module provides the `fewnomial-lab` command::

    fewnomial-lab run --config cfg.json [--seed N] [--workers K] [--out DIR]
    fewnomial-lab run --experiment example-2n [--samples S] ...
    fewnomial-lab list-experiments
    fewnomial-lab replay --system sys.json

Seeds resolve as ``--seed`` > config file > ``FEWNOMIAL_LAB_SEED`` > 0;
workers and the output directory as flag > config file > default. The exit
status is 0 when every verdict passes, 1 when some verdict fails and 2 on
invalid input or unwritable output.
"""

import argparse
import json
import sys
from dataclasses import replace
from typing import override

from tabulate import tabulate

from fewlab.core.errors import FewlabError
from fewlab.core.experiment_controller import ExperimentController
from fewlab.utils.seeding import SEED_ENV_VAR, seed_from_env

from ..counting.count_options import CountOptions
from ..counting.multivariate import count_zeros
from ..fewnomial.system import FewnomialSystem
from .config import ExperimentConfig
from .experiment_listener_cli import ExperimentListenerCLI
from .experiment_runner import ExperimentRunner
from .report import ReportWriter

__all__ = [
    "EXIT_OK",
    "EXIT_FAILED",
    "EXIT_ERROR",
    "EXIT_INTERRUPTED",
    "build_parser",
    "ExperimentControllerCLI",
    "main",
]


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2
EXIT_INTERRUPTED = 130


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fewnomial-lab",
        description="Expected positive zeros of random fewnomial systems."
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an experiment")
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--config", help="experiment configuration (JSON)")
    source.add_argument("--experiment", help="catalog experiment with default settings")
    run.add_argument("--seed", type=lambda s: int(s, 0),
                     help=f"master seed (default: config, then ${SEED_ENV_VAR}, then 0)")
    run.add_argument("--workers", type=int, help="worker processes")
    run.add_argument("--out", help="output directory (default ./out)")
    run.add_argument("--samples", type=int, help="override the samples per configuration")
    run.add_argument("--quiet", action="store_true", help="only print the summary")

    commands.add_parser("list-experiments", help="list the catalog")

    replay = commands.add_parser("replay", help="count the zeros of a saved system")
    replay.add_argument("--system", required=True, help="system JSON")
    return parser


class ExperimentControllerCLI(ExperimentController):
    """CLI controller driving an `ExperimentRunner` from argv.

    Attributes:
        view: The terminal listener.
        writer: The report file listener.
    """

    def __init__(self, model: ExperimentRunner):
        super().__init__(model)
        self.view = ExperimentListenerCLI()
        self.writer = ReportWriter()
        self.model.add_listener([self.view, self.writer])

    def resolve(self, args: argparse.Namespace) -> ExperimentConfig:
        """Merge the configuration file with the command-line overrides."""
        if args.config is not None:
            config = ExperimentConfig.load(args.config)
        else:
            config = ExperimentConfig(args.experiment)
        seed = args.seed if args.seed is not None else \
            config.seed if config.seed is not None else seed_from_env(0)
        return replace(
            config,
            seed=seed,
            workers=args.workers if args.workers is not None else config.workers or 1,
            output_dir=args.out or config.output_dir or "out",
            samples=args.samples if args.samples is not None else config.samples,
        )

    def run_experiment(self, args: argparse.Namespace) -> int:
        config = self.resolve(args)
        self.view.quiet = args.quiet
        self.writer.plots = config.plots
        self.view.plots = config.plots
        report = self.model.run(config)
        self.model.inform([f"Report written to {path}" for path in self.writer.written])
        return EXIT_OK if report.passed else EXIT_FAILED

    def list_experiments(self) -> int:
        print(tabulate(self.model.describe(), headers=["experiment", "description"],
                       tablefmt="rounded_outline"))
        return EXIT_OK

    def replay(self, path: str) -> int:
        """Count the zeros of a saved system and print the result as JSON.

        The file holds a system, or ``{"system": ..., "count": {...}}`` with
        counting options.
        """
        with open(path, "r", encoding="utf-8") as f:
            obj = json.load(f)
        if isinstance(obj, dict) and "system" in obj:
            system = FewnomialSystem.from_json(obj["system"])
            opts = CountOptions.from_json(obj.get("count"))
        else:
            system = FewnomialSystem.from_json(obj)
            opts = CountOptions()
        result = count_zeros(system, opts)
        print(json.dumps({"system": system.to_json(), "count_options": opts.to_json(),
                          "result": result.to_json()}, indent=2))
        return EXIT_OK

    @override
    def run(self, argv: list[str] | None = None) -> int:
        """Parse `argv` and dispatch the subcommand.

        Returns:
            The exit status.
        """
        args = build_parser().parse_args(argv)
        try:
            match args.command:
                case "run":
                    return self.run_experiment(args)
                case "list-experiments":
                    return self.list_experiments()
                case "replay":
                    return self.replay(args.system)
        except (FewlabError, ValueError, OSError) as e:
            print(f"fewnomial-lab: {e}", file=sys.stderr)
            return EXIT_ERROR
        except KeyboardInterrupt:
            print("\nRun exited with ^C", file=sys.stderr)
            return EXIT_INTERRUPTED
        return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    """Console script entry point."""
    controller = ExperimentControllerCLI(ExperimentRunner())
    sys.exit(controller.run(argv))
