"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search would exceed its configured resource cap."""

    def __init__(self, what: str, needed, cap):
        super().__init__(f"budget exceeded: {what} needs {needed}, cap is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap
