"""Exception types shared across the package."""


class CompositionNotZero(ValueError):
    """Two boundary maps fed to a homology routine do not compose to zero."""


class DimensionMismatch(ValueError):
    """Matrix shapes do not chain."""


class BudgetExceeded(RuntimeError):
    """A requested enumeration or matrix would exceed the word budget."""


class InsufficientWeightCutoff(ValueError):
    """A total over weights was requested that the weight cutoff cannot settle."""
