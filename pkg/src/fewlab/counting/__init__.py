"""Zero counting for fewnomial systems and the univariate expected count.

Example:
    >>> from fewlab.geometry import Support
    >>> from fewlab.counting import count_univariate
    >>> count_univariate(Support.of([(0,), (1,)]), [-1.0, 1.0]).count
    1
"""

from .count_options import *
from .univariate import *
from .interval import *
from .exclusion import *
from .multivariate import *
