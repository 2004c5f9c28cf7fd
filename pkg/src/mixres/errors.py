"""Exception hierarchy.

Errors that signal a failed mathematical precondition carry a ``definition``
attribute naming the notion that failed (for example ``"convenient germ"``);
the command line front end prints it and exits with status 1.  Parse and
usage problems exit with status 2.
"""


class MixresError(Exception):
    """Base class for all package errors."""

    definition = None

    def __init__(self, message, definition=None):
        super().__init__(message)
        if definition is not None:
            self.definition = definition


class InputError(MixresError, ValueError):
    """Malformed input (exit status 2 at the command line)."""


class ParseError(InputError):
    """Expression text does not match the grammar."""

    def __init__(self, message, position, expected=None):
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class IndexOutOfRange(InputError):
    """A variable index is outside ``1..n``."""


class PreconditionError(MixresError, ValueError):
    """A mathematical precondition is not met (exit status 1)."""


class EmptyPolynomial(PreconditionError):
    definition = "radial Newton polyhedron (needs a nonzero polynomial)"


class NotAGerm(PreconditionError):
    definition = "mixed function germ (f(0) = 0)"


class UnsupportedDimension(PreconditionError):
    definition = "two-variable construction (n = 2)"


class NotConvenient(PreconditionError):
    definition = "convenient germ"


class NonCompactFace(PreconditionError):
    definition = "face function (compact faces only)"


class DependentVertices(PreconditionError):
    definition = "simplicial cone (independent vertices)"


class ZeroVector(PreconditionError):
    definition = "weight vector (nonzero)"


class NegativeEntry(PreconditionError):
    definition = "weight vector (nonnegative entries)"


class NotRegular(PreconditionError):
    definition = "regular simplicial cone"


class NotFullDimensional(PreconditionError):
    definition = "toric chart (n-dimensional cone)"


class NonStrictVertex(PreconditionError):
    definition = "strictly positive weight vector"


class NotStronglyMixedHomogeneous(PreconditionError):
    definition = "strongly mixed weighted homogeneous polynomial"

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NonIntegerHalfDegrees(PreconditionError):
    definition = "strongly mixed weighted homogeneous polynomial (parity of r +- p)"


class NotAdmissible(PreconditionError):
    definition = "admissible regular simplicial cone subdivision"


class PreconditionNotVerified(PreconditionError):
    definition = "strongly polar non-negative mixed weighted homogeneous face type"


class NotASingleMonomialVertex(PreconditionError):
    definition = "vertex face carrying a single monomial"


class DomainError(PreconditionError):
    definition = "punctured domain (u != 0)"


class NotConvenientSubdivision(PreconditionError):
    definition = "convenient regular simplicial cone subdivision"
