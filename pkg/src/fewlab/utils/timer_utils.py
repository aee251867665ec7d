"""Monotonic stopwatch utilities.

This module provides a small monotonic stopwatch used to measure the wall
time of experiment sections without being affected by system clock changes.
"""

import time

__all__ = [
    "Stopwatch",
]


class Stopwatch:
    """A monotonic stopwatch for wall-time measurement.

    Attributes:
        _start: The monotonic time of the last reset, in seconds.
    """

    def __init__(self):
        """Initialize the stopwatch, running from now."""
        self._start = time.monotonic()

    def reset(self) -> None:
        """Start again from the current time."""
        self._start = time.monotonic()

    def elapsed(self) -> float:
        """Return the seconds since the last reset."""
        return time.monotonic() - self._start
