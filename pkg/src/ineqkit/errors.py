"""Exception types and degeneracy reasons shared across the package."""

# Reasons attached to DegenerateMetricError. A degenerate metric is a finding
# about the data (e.g. the bottom share of a zero-heavy distribution is zero),
# not a programming error, so callers frequently catch and record these.
ZERO_TOTAL = "zero-total"
ZERO_DENOMINATOR = "zero-denominator"
NO_SOLUTION = "no-solution"


class IneqKitError(Exception):
    """Base class for all errors raised by this package."""


class EmptyInputError(IneqKitError, ValueError):
    """A distribution or table was constructed from no values."""


class NegativeValueError(IneqKitError, ValueError):
    """A raw outcome value was negative."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"negative value at input index {index}")


class NonFiniteValueError(IneqKitError, ValueError):
    """A raw outcome value was NaN or infinite."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"non-finite value at input index {index}")


class DegenerateMetricError(IneqKitError):
    """A metric is undefined for the given distribution."""

    def __init__(self, metric, reason):
        self.metric = metric
        self.reason = reason
        super().__init__(f"{metric} is undefined: {reason}")


class AllResamplesDegenerateError(IneqKitError):
    """Every bootstrap resample hit a metric degeneracy."""


class MalformedRowError(IneqKitError, ValueError):
    """An input table row could not be parsed."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class NegativeCountError(MalformedRowError):
    """An input table row carried a negative count."""

    def __init__(self, line_no):
        super().__init__(line_no, "negative count")


class ConflictingCovariateError(IneqKitError, ValueError):
    """A member appeared with two different values for the same covariate."""

    def __init__(self, member_id, covariate):
        self.member_id = member_id
        self.covariate = covariate
        super().__init__(f"member {member_id!r} has conflicting values for {covariate!r}")


class EmptyAfterFilterError(IneqKitError):
    """No members survived the aggregation policy filters."""


class BinMismatchError(IneqKitError, ValueError):
    """Binned summaries being compared do not share identical bin edges."""
