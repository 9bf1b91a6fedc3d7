"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge or lost too much precision."""

    def __init__(self, message, terms_used=None):
        super().__init__(message)
        self.terms_used = terms_used
