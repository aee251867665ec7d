"""Default implementations of the experiment harness.

The `fewlab.defaults` package provides ready-to-use implementations of the
abstract interfaces defined in `fewlab.core`: the experiment runner (the
model), the catalog of named experiments, configuration parsing, report
writers, and the terminal listener and controller behind the
`fewnomial-lab` command.

Typical usage example::

    import fewlab.defaults as fd

    def main():
        runner = fd.ExperimentRunner()
        runner.add_listener([fd.ExperimentListenerCLI(), fd.ReportWriter()])
        report = runner.run(fd.ExperimentConfig("example-2n", samples=2000, seed=1))
        print(report.passed)


    if __name__ == "__main__":
        main()

Modules:
    config: Experiment configuration and support generators.
    sampling: Monte Carlo zero counts over Gaussian samples.
    catalog: The named experiments.
    experiment_runner: Default experiment model.
    report: Report file writers.
    experiment_listener_cli: Terminal event listener.
    experiment_controller_cli: Command-line controller and entry point.
"""

from .config import *
from .sampling import *
from .catalog import *
from .experiment_runner import *
from .report import *
from .experiment_listener_cli import *
from .experiment_controller_cli import *
