"""Exception types shared across the package."""


class EACountError(Exception):
    """Base class for all package errors."""


class ConfigurationError(EACountError, ValueError):
    """Unsupported field size or invalid parameter combination."""


class DimensionMismatch(EACountError, ValueError):
    pass


class SingularMatrix(EACountError, ValueError):
    pass


class BudgetExceeded(EACountError):
    """A requested enumeration is larger than the configured budget.

    ``required`` carries the size that would have been needed.
    """

    def __init__(self, what, required, budget):
        self.what = what
        self.required = required
        self.budget = budget
        super().__init__(f"{what}: requires {required} > budget {budget}")


class SolutionSpaceTooLarge(EACountError):
    def __init__(self, size, budget):
        self.size = size
        self.budget = budget
        super().__init__(f"affine fit solution space has {size} elements > budget {budget}")


class IntegralityViolation(EACountError, ArithmeticError):
    """Burnside sum not divisible by the group order (indicates a bug)."""


class TableParseError(EACountError, ValueError):
    def __init__(self, message, offset):
        self.offset = offset
        super().__init__(f"{message} (at byte offset {offset})")
