"""Exception types shared across the toolkit."""


class TreeAlphaError(Exception):
    """Base class for all toolkit errors."""


class FormatError(TreeAlphaError):
    """Malformed input text (graph files, pattern specs, tables)."""


class CapExceeded(TreeAlphaError):
    """A configured size cap refused the computation.

    Caps never truncate silently: anything too large to handle exactly
    raises this with a human-readable reason.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class HypothesisViolation(TreeAlphaError):
    """An input violates a stated hypothesis of the algorithm.

    `witness` carries the offending object (an embedding, a subgraph,
    a weight function, ...) when one is available.
    """

    def __init__(self, reason: str, witness=None):
        super().__init__(reason)
        self.reason = reason
        self.witness = witness


class ContractBreach(TreeAlphaError):
    """A user-supplied oracle returned something outside its contract."""
