"""Proper cones, their duals and characteristic functions, and sigma.

Example:
    >>> from fewlab.cones import ProperCone, char_function
    >>> char_function(ProperCone.orthant(2), [2.0, 4.0]).value
    0.125
"""

from .proper_cone import *
from .char_function import *
from .sigma import *
