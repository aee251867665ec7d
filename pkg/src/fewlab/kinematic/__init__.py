"""Kinematic estimator of the expected number of zeros, with self-tests.

Example:
    >>> from fewlab.geometry import Support
    >>> from fewlab.kinematic import expected_zeros_kinematic
    >>> est = expected_zeros_kinematic([Support.of([(0,), (1,)])])
    >>> round(est.value, 4)
    0.5
"""

from .tangent import *
from .integrand import *
from .quadrature import *
from .selftests import *
