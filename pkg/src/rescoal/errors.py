"""Exception hierarchy shared by every rescoal module."""


class RescoalError(Exception):
    """Base class for all errors raised by rescoal."""


class InvalidParameterError(RescoalError, ValueError):
    """A size or family parameter violates its stated constraint."""


class GraphStructureError(RescoalError, ValueError):
    """Malformed graph input (self-loop, out-of-range endpoint, non-clique identification set)."""


class DisconnectedGraphError(RescoalError, ValueError):
    pass


class ContractViolationError(RescoalError, ValueError):
    """An input matrix does not satisfy a documented precondition (e.g. symmetry)."""


class SingularMatrixError(RescoalError, ArithmeticError):
    pass


class InconsistentInverseError(RescoalError, ValueError):
    """A supplied generalized inverse yields resistances that cannot be right."""


class UnsupportedPairError(RescoalError, KeyError):
    """No closed-form index formula exists for the requested (index, family) pair."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class FormulaUndefinedError(RescoalError, ArithmeticError):
    """A printed closed-form formula divides by zero at the requested parameters."""


class ParseError(RescoalError, ValueError):
    pass
