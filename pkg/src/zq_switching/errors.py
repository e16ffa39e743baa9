"""Exception hierarchy shared by all modules."""


class ZqSwitchingError(ValueError):
    """Base class for every error raised by the library."""


class GraphError(ZqSwitchingError):
    """Malformed graph, labeling or vertex set, or mismatched q / n."""


class DomainError(ZqSwitchingError):
    """An argument is outside the domain an operation is defined on."""


class CheckError(ZqSwitchingError):
    """Unknown census check, or an order too small for the check."""


class BudgetExceeded(ZqSwitchingError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, what: str, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} steps, budget is {budget}")
