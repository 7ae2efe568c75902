class GradedLCError(Exception):
    """Base class for errors raised by this package."""


class IdealError(GradedLCError):
    pass


class ZeroModuleError(GradedLCError):
    pass


class NotComputable(GradedLCError):
    pass


class BudgetExceeded(GradedLCError):
    pass


class PreconditionError(GradedLCError):
    pass


class ParseError(GradedLCError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
