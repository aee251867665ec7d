"""Abstract controller interface for experiment runs.

This module defines the `ExperimentController` abstract base class which
represents the Controller component of the experiment harness. Controllers
turn outside input (command-line arguments, files, environment) into calls
on the experiment model.
"""

from fewlab.core.experiment_model import ExperimentModel
from abc import ABC, abstractmethod

__all__ = [
    "ExperimentController",
]


class ExperimentController(ABC):
    """Abstract base class for controlling experiment execution.

    Attributes:
        model: The experiment model instance to control.
    """

    def __init__(self, model: ExperimentModel, **kwargs):
        """Initialize the controller.

        Args:
            model: The experiment model instance to control.
        """
        super().__init__(**kwargs)
        self.model = model

    @abstractmethod
    def run(self, argv: list[str] | None = None) -> int:
        """Run the controller.

        Args:
            argv: Command-line style arguments, or None for the process ones.

        Returns:
            The process exit status.
        """
        pass
