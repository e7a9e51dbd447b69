"""GLS estimation under AR(1) errors and the associated confidence interval.

Everything is computed through the whitened (Prais-Winsten) design: with
T(psi)'T(psi) = (1 - psi**2) * G(psi)^{-1}, a thin QR factorization of
T(psi) X yields all GLS quantities without ever forming G(psi). The event
"the interval built at psi covers the true parameter" reduces to

    |b(psi)' e| <= t_{m,1-alpha/2} * sqrt(v(psi)) * sqrt(w(e, psi))

which depends on the data only through the standardized error vector e and
is therefore free of the regression coefficients and the error scale; see
:func:`coverage_indicator`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import solve_triangular
from scipy.optimize import brentq
from scipy.special import stdtr

from .ar1 import apply_precision, whiten
from .errors import (
    DimensionMismatchError,
    DomainError,
    IllConditionedDesignError,
    RankDeficientDesignError,
)

__all__ = [
    "Problem",
    "Interval",
    "GlsCache",
    "gls_cache",
    "w_statistic",
    "coverage_indicator",
    "confidence_interval",
    "t_quantile",
]

#: Designs whose whitened solve has estimated relative error above this are rejected.
CONDITION_LIMIT = 1e-6


@dataclass(frozen=True, eq=False)
class Problem:
    """A fixed inference problem: design matrix, contrast and nominal level.

    Parameters
    ----------
    x : (n, p) ndarray
        Design matrix with linearly independent columns, n > p.
    a : (p,) ndarray
        Nonzero contrast vector; the parameter of interest is ``a @ beta``.
    alpha : float
        One minus the nominal coverage probability, in (0, 1).
    """

    x: np.ndarray
    a: np.ndarray
    alpha: float = 0.05

    def __post_init__(self) -> None:
        x = np.atleast_2d(np.asarray(self.x, dtype=float))
        a = np.asarray(self.a, dtype=float).reshape(-1)
        if x.ndim != 2:
            raise DimensionMismatchError("design matrix must be two-dimensional")
        if not np.all(np.isfinite(x)):
            raise DomainError("design matrix contains non-finite entries")
        if not np.all(np.isfinite(a)):
            raise DomainError("contrast contains non-finite entries")
        n, p = x.shape
        if p < 1 or n <= p:
            raise DimensionMismatchError(
                f"need n > p >= 1, got design of shape ({n}, {p})"
            )
        if a.shape[0] != p:
            raise DimensionMismatchError(
                f"contrast has length {a.shape[0]}, design has {p} columns"
            )
        if not np.any(a):
            raise DomainError("contrast must be nonzero")
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if np.linalg.matrix_rank(x) < p:
            raise RankDeficientDesignError(
                "design matrix columns are linearly dependent"
            )
        object.__setattr__(self, "x", x.copy())
        object.__setattr__(self, "a", a.copy())
        self.x.setflags(write=False)
        self.a.setflags(write=False)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    @property
    def m(self) -> int:
        """Residual degrees of freedom n - p."""
        return self.x.shape[0] - self.x.shape[1]


@dataclass(frozen=True)
class Interval:
    """A symmetric interval [center - half_width, center + half_width]."""

    center: float
    half_width: float

    def __post_init__(self) -> None:
        if self.half_width < 0.0:
            raise DomainError("half_width must be nonnegative")

    @property
    def lower(self) -> float:
        return self.center - self.half_width

    @property
    def upper(self) -> float:
        return self.center + self.half_width

    def contains(self, x: float) -> bool:
        return abs(x - self.center) <= self.half_width


@dataclass(frozen=True, eq=False)
class GlsCache:
    """Per-psi quantities needed to evaluate intervals and coverage events.

    ``xtgx_inv`` is (X' G^{-1} X)^{-1}, ``b`` satisfies b' = a' xtgx_inv X' G^{-1}
    (so b' X = a'), ``v = a' xtgx_inv a`` and ``half_width_factor`` is
    t_{m,1-alpha/2} * sqrt(v). The whitened QR factors (q, r) and the solved
    contrast u = r^{-T} a are kept so that repeated evaluations cost O(n p).
    """

    psi: float
    xtgx_inv: np.ndarray
    b: np.ndarray
    v: float
    half_width_factor: float
    m: int
    t_crit: float = field(repr=False)
    q: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)


@lru_cache(maxsize=256)
def t_quantile(m: int, p: float) -> float:
    """Quantile of Student's t with m degrees of freedom.

    Inverts the CDF by bracketing plus derivative-free (Brent) refinement to
    an absolute tolerance of 1e-10.
    """
    if m < 1:
        raise DomainError(f"degrees of freedom must be >= 1, got {m!r}")
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie in (0, 1), got {p!r}")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(m, 1.0 - p)
    hi = 1.0
    for _ in range(2100):
        if stdtr(m, hi) >= p:
            break
        hi *= 2.0
    else:  # pragma: no cover - p < 1 always brackets well before this
        raise DomainError(f"failed to bracket the t quantile for p={p!r}")
    return float(
        brentq(lambda x: stdtr(m, x) - p, 0.0, hi, xtol=1e-10, rtol=4 * np.finfo(float).eps)
    )


def gls_cache(problem: Problem, psi: float) -> GlsCache:
    """Factorize the whitened design at psi and assemble interval constants."""
    if not 0.0 <= psi < 1.0:
        raise DomainError(f"psi must lie in [0, 1), got {psi!r}")
    xt = whiten(psi, problem.x)
    q, r = np.linalg.qr(xt)
    cond = np.linalg.cond(r)
    if not np.isfinite(cond) or cond * np.finfo(float).eps > CONDITION_LIMIT:
        raise IllConditionedDesignError(
            f"whitened design at psi={psi:.6g} has condition number {cond:.3e}; "
            f"estimated relative solve error exceeds {CONDITION_LIMIT:g}"
        )
    one_minus = 1.0 - psi * psi
    u = solve_triangular(r, problem.a, trans="T", lower=False)
    r_inv = solve_triangular(r, np.eye(problem.p), lower=False)
    xtgx_inv = one_minus * (r_inv @ r_inv.T)
    v = one_minus * float(u @ u)
    b = apply_precision(psi, problem.x @ (xtgx_inv @ problem.a))
    t_crit = t_quantile(problem.m, 1.0 - problem.alpha / 2.0)
    return GlsCache(
        psi=psi,
        xtgx_inv=xtgx_inv,
        b=b,
        v=v,
        half_width_factor=t_crit * np.sqrt(v),
        m=problem.m,
        t_crit=t_crit,
        q=q,
        r=r,
        u=u,
    )


def _whitened_stats(cache: GlsCache, data: np.ndarray) -> tuple[float, float]:
    """Return (a' beta_hat, whitened residual sum of squares) for one data vector."""
    vt = whiten(cache.psi, np.asarray(data, dtype=float))
    z = cache.q.T @ vt
    rss = max(float(vt @ vt - z @ z), 0.0)
    return float(cache.u @ z), rss


def w_statistic(edagger: np.ndarray, psi: float, problem: Problem) -> float:
    """Scaled GLS residual mean square of a standardized error vector.

    Equals (1/m) e' G^{-1}(psi) (I - X (X'G^{-1}X)^{-1} X'G^{-1}) e, i.e. the
    GLS variance estimate divided by the true error variance when ``edagger``
    is e / sigma. Always nonnegative; zero iff the input lies in the column
    space of the design.
    """
    cache = gls_cache(problem, psi)
    _, rss = _whitened_stats(cache, edagger)
    return rss / ((1.0 - psi * psi) * problem.m)


def coverage_indicator(edagger: np.ndarray, psi_tilde: float, problem: Problem) -> int:
    """1 if the interval built at psi_tilde would cover the true parameter.

    Evaluates the membership event in its standardized form
    |b(psi_tilde)' e| <= t_{m,1-alpha/2} sqrt(v(psi_tilde)) sqrt(w(e, psi_tilde)),
    which is invariant to rescaling of ``edagger``.
    """
    cache = gls_cache(problem, psi_tilde)
    num, rss = _whitened_stats(cache, edagger)
    bound = cache.t_crit * np.sqrt(float(cache.u @ cache.u)) * np.sqrt(rss / cache.m)
    return int(abs(num) <= bound)


def confidence_interval(y: np.ndarray, psi_tilde: float, problem: Problem) -> Interval:
    """The level-(1 - alpha) interval for ``a @ beta`` at autocorrelation psi_tilde.

    Center a' beta_hat(psi_tilde) and half width
    t_{m,1-alpha/2} * sqrt(v(psi_tilde)) * sigma_hat(psi_tilde); psi_tilde = 0
    gives the ordinary least squares interval.
    """
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != problem.n:
        raise DimensionMismatchError(
            f"response has length {y.shape[0]}, design has {problem.n} rows"
        )
    cache = gls_cache(problem, psi_tilde)
    center, rss = _whitened_stats(cache, y)
    half = cache.t_crit * np.sqrt(float(cache.u @ cache.u)) * np.sqrt(rss / cache.m)
    return Interval(center=center, half_width=half)
