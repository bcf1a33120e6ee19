"""Exception hierarchy.

Every error raised on purpose by the library derives from ``ReesError`` so
that the CLI can map it to an exit code in one place.
"""


class ReesError(Exception):
    """Base class for all library errors."""


class MalformedElement(ReesError, ValueError):
    pass


class MalformedInput(ReesError, ValueError):
    """Unparseable ring, ideal, polynomial, row or matrix text."""


class NonUnitLeadingCoeff(ReesError, ArithmeticError):
    pass


class NotAUnit(ReesError, ArithmeticError):
    pass


class ClosureViolation(ReesError, AssertionError):
    """An arithmetic result left the Rees-like algebra (internal bug)."""


class NotInAlgebra(ReesError, ValueError):
    """A polynomial with an odd-degree coefficient outside the ideal."""


class UnsupportedQuotient(ReesError):
    pass


class UnsupportedRing(ReesError):
    pass


class ImageMismatch(ReesError):
    def __init__(self, message, index=None, degree=None):
        super().__init__(message)
        self.index = index
        self.degree = degree


class DualMismatch(ReesError):
    pass


class DeterminantMismatch(ReesError):
    pass


class PreconditionFailed(ReesError):
    pass


class NotUnimodular(ReesError):
    pass


class BoundViolation(ReesError):
    pass


class NoCornerSolver(ReesError):
    pass


class NoRowSolver(ReesError):
    pass


class MalformedCertificate(ReesError):
    pass
