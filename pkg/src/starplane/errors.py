"""Exception hierarchy for the star-product engine.

Everything derives from EngineError so callers (notably the CLI) can map
failures to exit codes in one place.
"""


class EngineError(Exception):
    pass


class NotDivisible(EngineError):
    """exact_div found no polynomial quotient."""


class NonUnitLeadingTerm(EngineError):
    """h-series inversion requires an invertible order-0 coefficient."""


class DegenerateMap(EngineError):
    """Affine substitution with a vanishing linear coefficient."""


class ArityMismatch(EngineError):
    """Operator applied to the wrong number of arguments."""


class MissingPriorOrder(EngineError):
    """Recursion right-hand side requested without all lower orders."""


class Infeasible(EngineError):
    """No solution within caps, even after escalation."""


class NonUniqueSolution(EngineError):
    """A solve reported a nonzero kernel; contradicts the uniqueness theorem."""


class NotNormalized(EngineError):
    """Operation requires a product with the pure d/dx (x) d/dy shape."""


class IntegrationObstruction(EngineError):
    """A required y-antiderivative does not exist in the localized ring."""


class CapExceeded(EngineError):
    """A fitted operator fell outside the declared caps."""


class Inconsistent(EngineError):
    """A fitted operator failed validation on extra data."""


class NotInImage(EngineError):
    """Classifier round-trip assertion failed."""


class ParseError(EngineError):
    def __init__(self, message, line, col, expected=None):
        self.line = line
        self.col = col
        self.expected = expected or []
        super().__init__(f"{message} at line {line}, column {col}")
