"""Exception types shared across the package."""


class PrismError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PrismError, ValueError):
    """Input outside the mathematical domain of an operation (e.g. even p, q >= 0)."""


class DivisionByZero(PrismError, ZeroDivisionError):
    """A continued fraction tail evaluated to zero."""


class NoInterval(PrismError):
    """A standard basis vector is not an interval, nor the image of one under a reflection."""


class NonConvergence(PrismError):
    """The torsion-coefficient minimisation did not stabilise within its coordinate ceiling."""


class ConstraintViolation(PrismError, ValueError):
    """Parameters violate the constraints printed for a Berge-Kang family."""


class NotPrism(PrismError):
    """A Seifert fibred surgery is not a prism manifold (fibres are not (2, 2, p))."""


class InvariantError(PrismError, AssertionError):
    """An internal consistency check failed; this indicates a bug or a false conjecture."""


class DegenerateClass(PrismError, ValueError):
    """Homology classes whose triple pairing product vanishes, so no sign can be read off."""
