"""Random fewnomial systems as exponential sums, and their symmetries.

Example:
    >>> from fewlab.geometry import Support
    >>> from fewlab.fewnomial import sample_gaussian
    >>> segment = Support.of([(0,), (1,)])
    >>> system = sample_gaussian([segment], seed=3)
    >>> system.eval([0.0]).shape
    (1,)
"""

from .system import *
from .transforms import *
