"""Exception types shared across the package."""


class UfgError(Exception):
    """Base class for all errors raised by this package."""


# --- relation / poset validation -------------------------------------------

class NotReflexive(UfgError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"relation is not reflexive: missing ({label}, {label})")


class NotAntisymmetric(UfgError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"relation is not antisymmetric: both ({a}, {b}) and ({b}, {a}) present")


class NotTransitive(UfgError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"relation is not transitive: ({a}, {b}) is implied but missing")


class CycleDetected(UfgError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"transitive hull contains a cycle through ({a}, {b})")


class EmptyInput(UfgError):
    pass


class UniverseTooLarge(UfgError):
    def __init__(self, m, limit):
        self.m = m
        self.limit = limit
        super().__init__(f"universe has {m} items; enumeration limit is {limit}")


class SearchBudgetExceeded(UfgError):
    pass


class MemberNotInSet(UfgError):
    pass


class FamilySampleMismatch(UfgError):
    pass


class ScopeMismatch(UfgError):
    pass


class SolverTimeout(UfgError):
    """Extremal search hit its time limit. Carries the best-known incumbent."""

    def __init__(self, message, incumbent=None, gap=None):
        self.incumbent = incumbent
        self.gap = gap
        super().__init__(message)


# --- performance-table ingestion -------------------------------------------

class MissingCell(UfgError):
    pass


class DuplicateCell(UfgError):
    pass


class UnknownOrientation(UfgError):
    pass


class IndifferentAlgorithms(UfgError):
    def __init__(self, dataset, a, b):
        self.dataset = dataset
        self.pair = (a, b)
        super().__init__(
            f"algorithms {a!r} and {b!r} tie on every measure for dataset {dataset!r}; "
            "indifference does not yield a partial order"
        )


class Degenerate(UfgError):
    pass


class AmbiguousRanking(UfgError):
    pass
