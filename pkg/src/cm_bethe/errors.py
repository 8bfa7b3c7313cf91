"""Exception hierarchy for cm_bethe."""


class CMBetheError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CMBetheError, ValueError):
    """Malformed input: non-square, non-finite, mismatched shapes."""


class RankError(CMBetheError):
    """A matrix expected to be rank one is not (or is numerically zero)."""

    def __init__(self, message, singular_values=None):
        super().__init__(message)
        self.singular_values = singular_values


class PairRejected(CMBetheError):
    """A candidate (X, Z) does not satisfy rank([X, Z] + I) = 1."""

    def __init__(self, report):
        super().__init__(
            f"pair rejected ({report.status}): defect={report.defect:.3e}, "
            f"singular values={_fmt(report.singular_values)}"
        )
        self.report = report


class SingularityError(CMBetheError):
    """X is required to be numerically singular but is not."""


class VanishingAdjugateError(CMBetheError):
    """adj(X) vanishes because rank X <= n - 2."""


class SpectralCollisionError(CMBetheError):
    """A resolvent pole lies on (or too near) the spectrum of a matrix."""


class ConditioningError(CMBetheError):
    """A numerical procedure lost too much accuracy to be trusted."""


class InconsistentRootError(CMBetheError):
    """A value supplied as a root of tau^m is not one."""


class ConsistencyError(CMBetheError):
    """A transformed pair fails validation: numerical breakdown."""


def _fmt(values):
    return "[" + ", ".join(f"{v:.3e}" for v in values) + "]"
