"""Exception types shared across the package."""


class ExactDivisionError(ArithmeticError):
    """A polynomial division that must be exact left a nonzero remainder."""


class PoleError(ValueError):
    """A function was evaluated at one of its poles."""


class ParameterError(ValueError):
    """Operator parameters violate a nondegeneracy condition.

    ``condition`` names the violated condition so the CLI can report it.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition or message


class InvariantError(AssertionError):
    """Two independent constructions of the same object disagree."""


class NearSingularError(ArithmeticError):
    """A floating-point denominator is too close to zero to trust the quotient."""
