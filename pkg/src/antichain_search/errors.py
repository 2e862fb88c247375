"""Exception hierarchy shared by every module.

The CLI maps ``ContractError`` (and subclasses) to exit status 1 and
``ResourceError`` to exit status 2.
"""


class SearchError(Exception):
    """Base class for all library errors."""


class ContractError(SearchError, ValueError):
    """A precondition of an operation was violated."""


class DimensionError(ContractError):
    """Subsets or families over different ground sets were combined."""


class UnsupportedRegimeError(ContractError):
    """The (n, k) parameters fall outside every supported case."""


class DecodeError(ContractError):
    """An answer vector is not consistent with any k-member antichain."""


class ResourceError(SearchError, RuntimeError):
    """A size cap or node budget would be exceeded."""

    def __init__(self, message, **bounds):
        super().__init__(message)
        self.bounds = bounds
