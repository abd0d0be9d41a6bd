"""Exception hierarchy shared by all modules."""


class OddSecantError(Exception):
    """Base class for toolkit errors."""


class DivisionByZero(OddSecantError, ZeroDivisionError):
    pass


class MixedFields(OddSecantError, ValueError):
    pass


class EqualPoints(OddSecantError, ValueError):
    pass


class DegenerateFrame(OddSecantError, ValueError):
    pass


class BudgetExceeded(OddSecantError):
    """Raised when a group enumeration or search would exceed its budget."""

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class SizeMismatch(OddSecantError, ValueError):
    pass


class ScalingDegenerate(OddSecantError, ValueError):
    pass


class NotS43(OddSecantError, ValueError):
    pass


class MultiplicityMismatch(OddSecantError):
    pass


class TangentConeMismatch(OddSecantError):
    pass


class HypothesisFailed(OddSecantError, ValueError):
    pass


class BothZero(OddSecantError, ValueError):
    pass


class DegreeTooHigh(OddSecantError, ValueError):
    pass


class UnderDetermined(OddSecantError, ValueError):
    pass


class AllCollinear(OddSecantError, ValueError):
    pass


class InvalidParams(OddSecantError, ValueError):
    pass


class ParseError(OddSecantError, ValueError):
    def __init__(self, msg, lineno=None):
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno


class FieldMismatch(OddSecantError, ValueError):
    pass
