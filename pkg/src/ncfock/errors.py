"""Exception hierarchy.

Every error raised deliberately by the package derives from ``NCFockError``;
most also derive from ``ValueError`` since they signal bad inputs.
"""


class NCFockError(Exception):
    """Base class for all package errors."""


class ShapeMismatch(NCFockError, ValueError):
    pass


class BandTooLarge(NCFockError, ValueError):
    pass


class NotHermitian(NCFockError, ValueError):
    pass


class ModelInvalid(NCFockError, ValueError):
    pass


# classical charts
class DegeneratePoint(NCFockError, ValueError):
    pass


class DiracString(NCFockError, ValueError):
    pass


class OnAxis(NCFockError, ValueError):
    pass


class OutsideDomain(NCFockError, ValueError):
    pass


# quantum charts / admissible subspaces
class GroundSingularity(NCFockError, ValueError):
    pass


class NoSubspace(NCFockError, ValueError):
    pass


class DepthExceedsDomain(NCFockError, ValueError):
    pass


class SingularGram(NCFockError, ArithmeticError):
    pass


# representations and geometry
class NotInGroup(NCFockError, ValueError):
    pass


class DegreeTooHigh(NCFockError, ValueError):
    pass


class QuadratureBudgetExceeded(NCFockError, ArithmeticError):
    pass


class ZeroVector(NCFockError, ValueError):
    pass


class NotPseudoNormalized(NCFockError, ValueError):
    pass


# command line / reports
class UnknownSuite(NCFockError, ValueError):
    pass


class ConfigInvalid(NCFockError, ValueError):
    pass


class IOFailure(NCFockError, OSError):
    pass
