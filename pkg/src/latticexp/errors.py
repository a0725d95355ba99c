"""Exception types raised across the package."""


class LatticexpError(Exception):
    """Base class for all package errors."""


class NonUnit(LatticexpError, ArithmeticError):
    """Inversion requested for a ring element that is not a unit."""


class RingMismatch(LatticexpError, TypeError):
    """Operands belong to different rings."""


class Singular(LatticexpError, ArithmeticError):
    """Matrix is not invertible over its ring."""


class NotUnimodular(LatticexpError, ValueError):
    """The pair (a, b) does not generate the whole ring as a left ideal."""


class PreconditionViolated(LatticexpError, ValueError):
    """Input parameters outside the supported range."""


class InvalidLetter(LatticexpError, ValueError):
    """Elementary letter with i == j or an out-of-range index."""


class Unsupported(LatticexpError, ValueError):
    """Parameter regime deliberately not supported."""


class WordMismatch(LatticexpError, ValueError):
    """Letters of a word do not fit the word's dimension or ring."""


class CapExceeded(LatticexpError, RuntimeError):
    """An enumeration would exceed its configured size cap."""


class DegenerateWitness(LatticexpError, ValueError):
    """Witness vector vanishes after removing its invariant component."""


class SearchFailed(LatticexpError, RuntimeError):
    """A randomized search exhausted its budget."""


class BadGenerators(LatticexpError, ValueError):
    """Elements fail to generate the required residue group."""


class FormulaRegression(LatticexpError, AssertionError):
    """A closed-form inequality that should hold did not."""
