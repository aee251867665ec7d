"""Utility helpers for the fewlab packages.

This package contains shared utilities such as a stopwatch, seed
derivation and an ordered worker pool.
"""

from .timer_utils import *
from .seeding import *
from .parallel import *
