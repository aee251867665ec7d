"""Error types shared across the fewlab packages.

Every error raised on purpose by the library derives from `FewlabError`,
so controllers can report domain failures without swallowing programming
errors. Each concrete type also derives from `ValueError` because all of
them signal an input outside the domain of an operation.
"""

__all__ = [
    "FewlabError",
    "ConfigError",
    "DegenerateFanError",
    "ConeDomainError",
    "NotAVertexError",
]


class FewlabError(Exception):
    """Base class for all intentional fewlab failures."""


class ConfigError(FewlabError, ValueError):
    """An experiment or option configuration is invalid."""


class DegenerateFanError(FewlabError, ValueError):
    """The Minkowski sum is not full-dimensional, so its normal fan is degenerate.

    Callers should branch to the lower-dimensional case, where the system
    has no nondegenerate zeros.
    """


class ConeDomainError(FewlabError, ValueError):
    """A point lies on or outside the boundary of the dual cone.

    The characteristic function integral diverges there.
    """


class NotAVertexError(FewlabError, ValueError):
    """A point given as a vertex is not a vertex of the polytope."""
