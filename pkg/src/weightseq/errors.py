"""Exception hierarchy shared by all modules."""


class WeightSeqError(Exception):
    """Base class for library errors."""


class InvalidParameter(WeightSeqError, ValueError):
    """A family parameter or horizon is outside its admissible range."""


class HorizonExceeded(WeightSeqError):
    """A query needs data beyond the stored horizon or valid domain."""


class NotLogConvex(WeightSeqError):
    """The operation needs a log-convex sequence."""


class NotLC(WeightSeqError):
    """The operation needs a normalized log-convex sequence."""


class NoPositiveQuotient(WeightSeqError):
    """Every stored quotient satisfies mu_j <= 1."""


class MaximizerAtBracketCap(WeightSeqError):
    """sup_t t^j v(t) was not localized; v is likely not rapidly decreasing."""


class NonFinite(WeightSeqError):
    """A computed value is NaN or infinite where a finite value is required."""


class IncompatibleSystems(WeightSeqError):
    """Two weighted spaces use different system kinds."""


class PrerequisiteNotMet(WeightSeqError):
    """A characterization was requested without its hypotheses."""
