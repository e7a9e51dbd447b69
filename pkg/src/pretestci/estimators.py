"""Estimators of the AR(1) error autocorrelation psi.

Three estimators are provided: the sample first-order autocorrelation of the
OLS residuals, maximum likelihood, and restricted maximum likelihood. The
ML/REML criteria are profiled over beta through the whitened-design residual
sum of squares S(psi):

    ML:   -(n/2) log(S / n) - (1/2) log|G(psi)|
    REML: -(m/2) log(S / m) - (1/2) log|G(psi)| - (1/2) log|X' G^{-1}(psi) X|

Maximization uses a 129-point uniform grid on [0, 1 - 1e-6] followed by
golden-section refinement of the bracketing cell to |dpsi| <= 1e-6; criteria
can be multimodal for small n, and the grid-first pass avoids local traps.

Internally the criteria are compared after normalizing S(psi) by S(0), which
makes the grid argmax and every refinement comparison invariant under
power-of-two rescaling of the data (scaling by 2**k is exact in IEEE
arithmetic, and the ratio cancels it exactly). ``estimate_psi_many`` batches
the whole search across draws, which is what makes the Monte Carlo engine
affordable: one batched QR per golden-section step instead of one per draw.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .ar1 import whiten
from .errors import (
    DegenerateFitError,
    DegenerateResidualsError,
    DimensionMismatchError,
    DomainError,
)
from .gls import Problem

__all__ = [
    "PsiEstimatorKind",
    "CriterionProfile",
    "ProfileCache",
    "ols_residuals",
    "psi_hat_sample",
    "ml_criterion",
    "reml_criterion",
    "estimate_psi",
    "estimate_psi_many",
    "criterion_profile",
    "PSI_MAX",
]

#: Upper clamp for psi estimates; keeps log(1 - psi**2) finite.
PSI_MAX = 1.0 - 1e-6
#: Coarse search grid size on [0, PSI_MAX].
GRID_SIZE = 129
#: Target bracket width for the golden-section refinement.
REFINE_TOL = 1e-6

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - np.sqrt(5.0)) / 2.0
# iterations needed to shrink two grid cells below REFINE_TOL
_GOLDEN_ITERS = int(
    np.ceil(np.log((2.0 * PSI_MAX / (GRID_SIZE - 1)) / REFINE_TOL) / -np.log(_INVPHI))
)


class PsiEstimatorKind(enum.Enum):
    """Which estimator of the error autocorrelation to use."""

    SAMPLE_ACF = "sample-acf"
    ML = "ml"
    REML = "reml"


@dataclass(frozen=True, eq=False)
class CriterionProfile:
    """A criterion evaluated on the search grid, with its refined argmax."""

    grid: np.ndarray
    values: np.ndarray
    argmax: float
    max_value: float


def ols_residuals(problem: Problem, v: np.ndarray) -> np.ndarray:
    """Project onto the orthogonal complement of the design's column space.

    Accepts a vector of length n or an (n, k) stack of vectors.
    """
    v = np.asarray(v, dtype=float)
    if v.shape[0] != problem.n:
        raise DimensionMismatchError(
            f"input has leading dimension {v.shape[0]}, design has {problem.n} rows"
        )
    q, _ = np.linalg.qr(problem.x)
    return v - q @ (q.T @ v)


def psi_hat_sample(r: np.ndarray) -> float:
    """Sample first-order autocorrelation sum(r_t r_{t-1}) / sum(r_t**2).

    The raw value may be negative; it is scale-invariant in r. Raises
    DegenerateResidualsError for an identically zero input.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    den = float(r @ r)
    if den == 0.0:
        raise DegenerateResidualsError("residual vector is identically zero")
    return float(r[1:] @ r[:-1]) / den


def _profiled_s(psi: float, data: np.ndarray, problem: Problem) -> tuple[float, np.ndarray]:
    """S(beta_hat(psi), psi) for one data vector, plus the whitened R factor."""
    q, r = np.linalg.qr(whiten(psi, problem.x))
    vt = whiten(psi, np.asarray(data, dtype=float).reshape(-1))
    z = q.T @ vt
    rss = max(float(vt @ vt - z @ z), 0.0)
    return rss / (1.0 - psi * psi), r


def ml_criterion(psi: float, edagger_or_y: np.ndarray, problem: Problem) -> float:
    """Profiled Gaussian log-likelihood criterion at psi (additive constants dropped).

    Rescaling the data shifts the value by a psi-independent constant only, so
    the argmax is unchanged.
    """
    s, _ = _profiled_s(psi, edagger_or_y, problem)
    if s <= 0.0:
        raise DegenerateFitError("exact fit: profiled residual sum of squares is zero")
    n = problem.n
    return -(n / 2.0) * np.log(s / n) - 0.5 * (n - 1) * np.log1p(-psi * psi)


def reml_criterion(psi: float, edagger_or_y: np.ndarray, problem: Problem) -> float:
    """Restricted-likelihood criterion: ML plus the -(1/2) log|X' G^{-1} X| term."""
    s, r = _profiled_s(psi, edagger_or_y, problem)
    if s <= 0.0:
        raise DegenerateFitError("exact fit: profiled residual sum of squares is zero")
    n, p, m = problem.n, problem.p, problem.m
    one_minus = np.log1p(-psi * psi)
    logdet_xgx = 2.0 * float(np.sum(np.log(np.abs(np.diag(r))))) - p * one_minus
    return -(m / 2.0) * np.log(s / m) - 0.5 * (n - 1) * one_minus - 0.5 * logdet_xgx


class ProfileCache:
    """Grid factorizations of one design, shared across criterion evaluations.

    Stores, for each grid psi, the whitened-design QR factor and the
    psi-dependent log-determinant penalties. One instance serves every draw of
    a Monte Carlo run.
    """

    def __init__(self, problem: Problem, grid_size: int = GRID_SIZE) -> None:
        self.problem = problem
        self.grid = np.linspace(0.0, PSI_MAX, grid_size)
        n, p = problem.n, problem.p
        qs = np.empty((grid_size, n, p))
        logdet_xgx = np.empty(grid_size)
        for j, psi in enumerate(self.grid):
            q, r = np.linalg.qr(whiten(psi, problem.x))
            qs[j] = q
            logdet_xgx[j] = 2.0 * np.sum(np.log(np.abs(np.diag(r)))) - p * np.log1p(
                -psi * psi
            )
        self.qs = qs
        self.logdet_g = (n - 1) * np.log1p(-self.grid**2)
        self.logdet_xgx = logdet_xgx


def _whiten_rows(psis: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Prais-Winsten transform of each row of `rows` at its own psi."""
    out = np.empty_like(rows)
    out[:, 0] = np.sqrt(1.0 - psis * psis) * rows[:, 0]
    out[:, 1:] = rows[:, 1:] - psis[:, None] * rows[:, :-1]
    return out


def _whiten_design(psis: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Per-draw whitened copies of the design: (k, n, p) for psis of shape (k,)."""
    out = np.empty((psis.shape[0],) + x.shape)
    out[:, 0, :] = np.sqrt(1.0 - psis * psis)[:, None] * x[0]
    out[:, 1:, :] = x[1:] - psis[:, None, None] * x[:-1]
    return out


def _normalized_criterion(
    psis: np.ndarray,
    rows: np.ndarray,
    problem: Problem,
    use_reml: bool,
    s_ref: np.ndarray,
) -> np.ndarray:
    """Criterion values at per-row psi, normalized by the row's S at psi = 0."""
    n, p, m = problem.n, problem.p, problem.m
    xt = _whiten_design(psis, problem.x)
    q, r = np.linalg.qr(xt)
    vt = _whiten_rows(psis, rows)
    z = np.einsum("knp,kn->kp", q, vt)
    rss = np.einsum("kn,kn->k", vt, vt) - np.einsum("kp,kp->k", z, z)
    np.clip(rss, 0.0, None, out=rss)
    one_minus = np.log1p(-psis * psis)
    s = rss / (1.0 - psis * psis)
    weight = m / 2.0 if use_reml else n / 2.0
    with np.errstate(divide="ignore"):
        f = -weight * np.log(s / s_ref) - 0.5 * (n - 1) * one_minus
        if use_reml:
            diags = np.abs(np.diagonal(r, axis1=1, axis2=2))
            f -= 0.5 * (2.0 * np.sum(np.log(diags), axis=1) - p * one_minus)
    return f


def estimate_psi_many(
    kind: PsiEstimatorKind,
    rows: np.ndarray,
    problem: Problem,
    cache: ProfileCache | None = None,
) -> np.ndarray:
    """Estimate psi for each row of a (k, n) batch of data vectors.

    Results are clamped to [0, PSI_MAX]. For ML/REML the batch shares the
    coarse grid pass and golden-section refinement, so the cost per draw is a
    handful of small vectorized operations.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.shape[1] != problem.n:
        raise DimensionMismatchError(
            f"rows have length {rows.shape[1]}, design has {problem.n} rows"
        )
    if kind is PsiEstimatorKind.SAMPLE_ACF:
        q, _ = np.linalg.qr(problem.x)
        resid = rows - (rows @ q) @ q.T
        den = np.einsum("kn,kn->k", resid, resid)
        if np.any(den == 0.0):
            raise DegenerateResidualsError("residual vector is identically zero")
        raw = np.einsum("kn,kn->k", resid[:, 1:], resid[:, :-1]) / den
        return np.clip(raw, 0.0, PSI_MAX)

    if cache is None:
        cache = ProfileCache(problem)
    use_reml = kind is PsiEstimatorKind.REML
    grid = cache.grid
    g = grid.shape[0]
    k = rows.shape[0]
    n, m = problem.n, problem.m
    weight = m / 2.0 if use_reml else n / 2.0

    s_grid = np.empty((g, k))
    cols = rows.T
    for j in range(g):
        vt = whiten(grid[j], cols)
        z = cache.qs[j].T @ vt
        rss = np.einsum("nk,nk->k", vt, vt) - np.einsum("pk,pk->k", z, z)
        np.clip(rss, 0.0, None, out=rss)
        s_grid[j] = rss / (1.0 - grid[j] * grid[j])
    s_ref = s_grid[0].copy()
    if np.any(s_ref <= 0.0):
        raise DegenerateFitError("exact fit: profiled residual sum of squares is zero")

    penalty = 0.5 * cache.logdet_g + (0.5 * cache.logdet_xgx if use_reml else 0.0)
    with np.errstate(divide="ignore"):
        f_grid = -weight * np.log(s_grid / s_ref) - penalty[:, None]
    j_star = np.argmax(f_grid, axis=0)

    lo = grid[np.maximum(j_star - 1, 0)]
    hi = grid[np.minimum(j_star + 1, g - 1)]
    x1 = lo + _INVPHI2 * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1 = _normalized_criterion(x1, rows, problem, use_reml, s_ref)
    f2 = _normalized_criterion(x2, rows, problem, use_reml, s_ref)
    for _ in range(_GOLDEN_ITERS):
        shrink_right = f1 > f2
        lo = np.where(shrink_right, lo, x1)
        hi = np.where(shrink_right, x2, hi)
        x_new = np.where(
            shrink_right, lo + _INVPHI2 * (hi - lo), lo + _INVPHI * (hi - lo)
        )
        f_new = _normalized_criterion(x_new, rows, problem, use_reml, s_ref)
        x1, x2 = np.where(shrink_right, x_new, x2), np.where(shrink_right, x1, x_new)
        f1, f2 = np.where(shrink_right, f_new, f2), np.where(shrink_right, f1, f_new)
    best = np.where(f1 > f2, x1, x2)
    return np.clip(best, 0.0, PSI_MAX)


def estimate_psi(
    kind: PsiEstimatorKind, data: np.ndarray, problem: Problem
) -> float:
    """Estimate psi from one data vector (a response or standardized errors).

    SAMPLE_ACF returns the clamped sample autocorrelation of the OLS
    residuals; ML/REML maximize their criterion over [0, 1 - 1e-6]. The
    result depends on the data only up to the documented scale shift of the
    criterion, so estimates from y and from e = y - X beta coincide.
    """
    data = np.asarray(data, dtype=float).reshape(-1)
    return float(estimate_psi_many(kind, data[None, :], problem)[0])


def criterion_profile(
    kind: PsiEstimatorKind, data: np.ndarray, problem: Problem
) -> CriterionProfile:
    """Evaluate an ML/REML criterion on the search grid and refine its argmax."""
    if kind is PsiEstimatorKind.SAMPLE_ACF:
        raise DomainError("the sample autocorrelation estimator has no criterion")
    cache = ProfileCache(problem)
    crit = ml_criterion if kind is PsiEstimatorKind.ML else reml_criterion
    values = np.array([crit(psi, data, problem) for psi in cache.grid])
    argmax = float(estimate_psi_many(kind, np.asarray(data)[None, :], problem, cache)[0])
    return CriterionProfile(
        grid=cache.grid, values=values, argmax=argmax, max_value=crit(argmax, data, problem)
    )
