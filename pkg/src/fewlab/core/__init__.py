"""Abstractions, events and error types for the experiment harness.

The `fewlab.core` package provides the building blocks of the experiment
layer following a Model–View–Controller split: a model that runs
experiments and emits events, listeners that render or persist them, and
a controller that drives the model from the outside.

Typical usage example::

    from fewlab.core import ExperimentListener, ExperimentEvent
    from typing import override


    class RowCollector(ExperimentListener):

        def __init__(self):
            self.rows = []

        @override
        def on_event(self, e: ExperimentEvent, args=None) -> None:
            match e:
                case ExperimentEvent.PROGRESS:
                    self.rows.append(args)
                case _:
                    pass

Modules:
    experiment_model: Model abstraction owning configuration and execution.
    experiment_controller: Controller abstraction driving the model.
    experiment_listener: Listener abstraction for reacting to events.
    experiment_event: Event definitions used between components.
    errors: Error hierarchy shared by all packages.
"""

from .errors import *
from .experiment_controller import *
from .experiment_model import *
from .experiment_listener import *
from .experiment_event import *
