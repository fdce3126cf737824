"""Exception types shared across the package."""


class MonocurveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(MonocurveError):
    """Malformed generators, vectors, or arguments."""


class MustNormalizeError(MonocurveError):
    """Operation requires gcd(generators) == 1; call normalize() first."""


class InvalidPivotError(MonocurveError):
    """Apery pivot is not a member of the semigroup."""


class DegenerateInputError(MonocurveError):
    """Zero lattice vector where a binomial was expected."""


class InternalBoundError(MonocurveError):
    """A safety cap was exceeded; indicates a bug or absurd input."""


class OutOfRangeError(MonocurveError):
    """Arguments fall outside the hypotheses of the statement being tested."""


class HypothesisNotMetError(MonocurveError):
    """The family lacks the structure the theorem requires."""


class InsufficientDataError(MonocurveError):
    """Scan window too small for the requested analysis."""
