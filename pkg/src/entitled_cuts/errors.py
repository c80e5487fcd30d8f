"""Exception taxonomy shared across the package."""


class EntitledCutsError(Exception):
    """Base class for all errors raised by this package."""


class TargetExceedsRemainder(EntitledCutsError, ValueError):
    """A mark was requested for more value than remains right of the start."""


class EmptySubcake(EntitledCutsError, ValueError):
    """An operation that needs a nonempty sub-cake received an empty region."""


class PieceNotConnected(EntitledCutsError, ValueError):
    """Cut-and-choose was handed a piece made of more than one interval."""


class PreconditionViolated(EntitledCutsError, ValueError):
    """A special-case protocol was invoked on an instance it does not cover."""


class UnboundedLexMin(EntitledCutsError, RuntimeError):
    """A lexicographic minimization step has no finite minimum.

    Callers are expected to box every variable, so this signals a caller bug.
    """


class NoSplitFound(EntitledCutsError, RuntimeError):
    """The consensus-split enumeration exhausted without a feasible system.

    Existence is guaranteed for the full enumeration, so this is surfaced as
    an implementation bug rather than swallowed.
    """


class BudgetExceeded(EntitledCutsError, RuntimeError):
    """An enumeration would examine (or has examined) too many systems."""


class NotFoundWithin(EntitledCutsError):
    """No allocation within the cut budget explored by min_cuts."""

    def __init__(self, k_max: int):
        self.k_max = k_max
        super().__init__(f"no feasible allocation found with at most {k_max} cuts")
