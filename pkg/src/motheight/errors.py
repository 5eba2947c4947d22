class StructuralError(RuntimeError):
    """An identity that must hold exactly failed; indicates a bug or a bad input."""


class FanError(ValueError):
    """Malformed fan data."""


class BudgetExceeded(RuntimeError):
    """Brute-force enumeration would exceed its configured budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} tuples, budget is {budget}")
        self.required = required
        self.budget = budget
