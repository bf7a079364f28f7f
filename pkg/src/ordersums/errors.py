"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation (e.g. ``n = 0``)."""


class CapExceededError(RuntimeError):
    """A configured enumeration or brute-force cap would be exceeded."""

    def __init__(self, message: str, n: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.n = n
        self.cap = cap


class NoNonCyclicGroupError(DomainError):
    """Every abelian group of the requested order is cyclic."""
