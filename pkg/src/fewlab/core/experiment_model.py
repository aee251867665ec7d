"""Abstract experiment model definition.

This module defines the `ExperimentModel` abstract base class which
represents the Model component of the experiment harness. The model owns
the experiment configuration, executes the numerical work and notifies
listeners about progress and results.
"""

from fewlab.core.experiment_listener import ExperimentListener
from fewlab.core.experiment_event import ExperimentEvent

from abc import ABC, abstractmethod
from typing import Any

__all__ = [
    "ExperimentModel",
]


class ExperimentModel(ABC):
    """Abstract base class representing an experiment model.

    Subclasses implement `run` and `experiment_names`; the listener
    bookkeeping and the lifecycle notifications are shared.

    Attributes:
        listeners: Registered listeners that will be notified of events.
    """

    def __init__(self, **kwargs):
        """Initialize the experiment model."""
        super().__init__(**kwargs)
        self.listeners: list[ExperimentListener] = []

    def notify_listeners(self, e: ExperimentEvent,
                         args: Any | None = None) -> None:
        """Notify all registered listeners of an experiment event.

        Args:
            e: The experiment event to emit.
            args: Optional event-specific arguments the listeners may process.
        """
        for listener in self.listeners:
            listener.on_event(e, args)

    def add_listener(
            self,
            listener: ExperimentListener | list[ExperimentListener]
    ) -> None:
        """Add one or more listeners to the experiment model.

        Args:
            listener: A single `ExperimentListener` instance or a list of
                listeners to register.
        """
        if isinstance(listener, list):
            self.listeners += listener
        else:
            self.listeners.append(listener)

    def begin(self, args: Any | None = None) -> None:
        """Signal the beginning of a run."""
        self.notify_listeners(ExperimentEvent.BEGIN, args)

    def end(self, args: Any | None = None) -> None:
        """Signal the end of a run.

        Args:
            args: Optional data associated with the end of the run,
                usually the finished report.
        """
        self.notify_listeners(ExperimentEvent.END, args)

    def inform(self, args: Any) -> None:
        """Send informational messages to the listeners.

        Args:
            args: Informational data, usually a list of strings.
        """
        self.notify_listeners(ExperimentEvent.INFO, args)

    @abstractmethod
    def experiment_names(self) -> list[str]:
        """Return the names of the experiments this model can run."""
        pass

    @abstractmethod
    def run(self, config: Any) -> Any:
        """Run one experiment configuration.

        Args:
            config: The experiment configuration.

        Returns:
            The experiment report.
        """
        pass
