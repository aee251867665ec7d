"""Closed-form bounds on the expected number of positive zeros.

Example:
    >>> from fewlab.bounds import bound_mixed
    >>> round(bound_mixed(1, [3], 2), 5)
    1.59577
"""

from .closed_forms import *
from .bound_report import *
