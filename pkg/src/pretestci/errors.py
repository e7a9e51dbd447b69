"""Exception types shared across the package."""


class PretestCIError(Exception):
    """Base class for all pretestci errors."""


class DomainError(PretestCIError, ValueError):
    """An argument lies outside its documented domain."""


class DimensionMismatchError(PretestCIError, ValueError):
    """Array shapes are inconsistent with each other or with the design."""


class RankDeficientDesignError(PretestCIError):
    """The design matrix does not have full column rank."""


class IllConditionedDesignError(PretestCIError):
    """The whitened design is too ill-conditioned for a trustworthy solve.

    Raised when the estimated relative error of the factorization
    (condition number times machine epsilon) exceeds 1e-6.
    """


class DegenerateResidualsError(PretestCIError):
    """A residual-based statistic was requested for a zero residual vector."""


class DegenerateFitError(PretestCIError):
    """The profiled residual sum of squares vanished (exact fit).

    The ML/REML criteria are unbounded in this case, so no autocorrelation
    estimate exists.
    """


class QuadratureError(PretestCIError):
    """Numerical integration or root finding failed to reach its tolerance."""


class CsvParseError(PretestCIError, ValueError):
    """A CSV cell could not be parsed as a number."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        super().__init__(message)
        self.row = row
        self.col = col
