"""Experiment event definitions used for communication between components.

This module defines the `ExperimentEvent` enumeration which represents
the different events that can occur during the lifecycle of an experiment
run. These events are emitted by the experiment model and consumed by
listeners to render progress or persist results.
"""

from enum import Enum

__all__ = [
    "ExperimentEvent",
]


class ExperimentEvent(Enum):
    """Enumeration of experiment lifecycle events."""

    BEGIN = 0
    """Signal that an experiment run has started."""

    SECTION = 1
    """Signal that a new configuration (report section) is being evaluated."""

    PROGRESS = 2
    """Signal that a configuration finished and its report row is ready."""

    INFO = 3
    """Signal that informational data should be presented to the user."""

    END = 4
    """Signal that the run has ended and the report is complete."""
