"""Library exceptions
"""


class LinkedGrassError(RuntimeError):
    """Base exception for all linkedgrass errors
    """
    pass


class NotInvertible(LinkedGrassError):
    """A matrix expected to be invertible (a lattice basis, a change of basis)
    turned out to be singular
    """
    pass


class NotConvex(LinkedGrassError):
    """A set of lattice classes is not closed under intersections of
    representatives
    """
    pass


class NotLocallyIndependent(LinkedGrassError):
    """An operation that is only defined for locally linearly independent
    configurations was called on a configuration that is not
    """
    pass


class NotSubrepresentation(LinkedGrassError):
    """A family of subspaces is not stable under the arrow maps
    """
    pass


class PreconditionFailed(LinkedGrassError):
    """The input does not satisfy the hypotheses of the requested construction
    """
    pass


class BudgetExceeded(LinkedGrassError):
    """An enumeration would visit more candidates than the configured budget
    """
    pass


class GenericChoiceFailed(LinkedGrassError):
    """Random "general" choices kept landing on the bad locus

    This happens over very small prime fields; retrying over a larger prime
    is expected to succeed.
    """
    def __init__(self, message, p=None):
        super(GenericChoiceFailed, self).__init__(message)
        self.p = p


class VerificationMismatch(LinkedGrassError):
    """An identity that must hold for the computed objects failed
    """
    pass


class ParseError(LinkedGrassError, ValueError):
    """Malformed input document

    `line` and `column` are 1-based when known.
    """
    def __init__(self, message, line=None, column=None):
        position = _position(line, column)
        if position:
            message = '{} ({})'.format(message, position)
        super(ParseError, self).__init__(message)
        self.line = line
        self.column = column


def _position(line, column):
    parts = []
    if line is not None:
        parts.append('line {}'.format(line))
    if column is not None:
        parts.append('column {}'.format(column))
    return ', '.join(parts)
