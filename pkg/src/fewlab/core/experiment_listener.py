"""Abstract event listener interface for experiment runs.

This module defines the `ExperimentListener` abstract base class. Listeners
react to events emitted by the experiment model and can be used to update
a console view, write report files or collect rows in tests.
"""

from fewlab.core.experiment_event import ExperimentEvent

from abc import ABC, abstractmethod
from typing import Any

__all__ = [
    "ExperimentListener",
]


class ExperimentListener(ABC):
    """Abstract base class for reacting to experiment events."""

    @abstractmethod
    def on_event(self, e: ExperimentEvent, args: Any | None = None) -> None:
        """Handle an experiment event.

        Args:
            e: The experiment event that occurred.
            args: Optional event-specific data which may be processed.
        """
        pass
