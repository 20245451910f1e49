# src/exceptions.py

# Errors raised by the cover-genus library. Bad input derives from ValueError,
# internal-consistency failures (which signal a bug) from RuntimeError.


class CoverGenusError(Exception):
    """Base class for every error raised by this package."""


class InvalidPermutation(CoverGenusError, ValueError):
    pass


class DegreeMismatch(CoverGenusError, ValueError):
    pass


class OrderExceedsCap(CoverGenusError, ValueError):
    def __init__(self, message, lower_bound=None, cap=None):
        super().__init__(message)
        self.lower_bound = lower_bound
        self.cap = cap


class RelationViolated(CoverGenusError, ValueError):
    pass


class NotTransitive(CoverGenusError, ValueError):
    pass


class DuplicateLabel(CoverGenusError, ValueError):
    pass


class BaseMismatch(CoverGenusError, ValueError):
    pass


class LabelConflict(CoverGenusError, ValueError):
    pass


class NotAligned(CoverGenusError, ValueError):
    pass


class KOutOfRange(CoverGenusError, ValueError):
    pass


class BudgetExceeded(CoverGenusError, ValueError):
    def __init__(self, message, required=None, budget=None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class RetriesExhausted(CoverGenusError, ValueError):
    pass


class UnknownFixture(CoverGenusError, ValueError):
    pass


class SchemaError(CoverGenusError, ValueError):
    pass


class InternalParity(CoverGenusError, RuntimeError):
    pass


class InternalConsistency(CoverGenusError, RuntimeError):
    pass
