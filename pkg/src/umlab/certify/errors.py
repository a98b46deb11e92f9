"""Failure modes shared by the constructions."""


class RefusedError(RuntimeError):
    """A hypothesis could not be certified; the construction declines to proceed."""

    def __init__(self, reason: str, details: dict | None = None):
        super().__init__(reason)
        self.reason = reason
        self.details = details or {}


class BudgetError(RuntimeError):
    """A size or precision budget ran out; ``stage`` names where."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
