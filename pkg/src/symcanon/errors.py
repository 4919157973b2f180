"""Exception types shared across the package."""


class SymcanonError(Exception):
    """Base class for all package-specific errors."""


class AsymmetricTensorError(SymcanonError, ValueError):
    """An operation that requires a symmetric tensor received an asymmetric one."""


class UndecomposableError(SymcanonError, ValueError):
    """The tensor has no decomposition into symmetric simple tensors."""


class BudgetExceededError(SymcanonError, RuntimeError):
    """The requested computation would exceed the configured code-set budget."""


class FixtureError(SymcanonError, ValueError):
    """A reference-table fixture file is malformed."""


class MissingFixtureError(FixtureError):
    """No fixture exists for the requested parameters."""
