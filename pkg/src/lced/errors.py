"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Invalid vertex/edge ids or out-of-range parameters."""


class MatchingStructureError(ValueError):
    """A claimed matching shares a vertex, or matchings overlap."""


class ConstructionError(ValueError):
    """A demand-matching graph cannot be realised with the available copies."""

    def __init__(self, message: str, vertex: int | None = None, index: int | None = None):
        super().__init__(message)
        self.vertex = vertex
        self.index = index


class FormatError(ValueError):
    """Malformed input file."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""

    def __init__(self, message: str, bound: int | None = None, progress=None):
        super().__init__(message)
        self.bound = bound
        self.progress = progress
