"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`KhflowError`,
and also from the closest builtin so callers can catch either.
"""


class KhflowError(Exception):
    pass


class PDSyntaxError(KhflowError, SyntaxError):
    """Malformed token in a planar-diagram code."""


class TopologyError(KhflowError, ValueError):
    """The PD code parses but does not describe an oriented planar link diagram."""


class DimensionError(KhflowError, ValueError):
    pass


class BitError(KhflowError, ValueError):
    """A cube coordinate has the wrong value for the requested operation."""


class DiagramMismatch(KhflowError, ValueError):
    pass


class ResourceError(KhflowError, RuntimeError):
    """Requested cube is larger than the configured cap."""


class ComplexError(KhflowError, ArithmeticError):
    """A differential fails to square to zero."""


class DivisibilityError(KhflowError, ArithmeticError):
    pass


class AxiomViolation(KhflowError, AssertionError):
    def __init__(self, message, stratum=None):
        super().__init__(message)
        self.stratum = stratum


class ModuliIndexError(KhflowError, IndexError):
    """Operation called on a decorated configuration of the wrong index."""
