"""Durbin-Watson pretest: exact null distribution, critical values, t-statistic.

Under psi = 0 the Durbin-Watson statistic is a ratio of quadratic forms in the
OLS residuals. Working in an orthonormal basis of the residual subspace turns
``P(dw <= c)`` into the probability that a weighted sum of independent
chi-square(1) variables is nonpositive, with weights nu_j - c where nu_j are
the eigenvalues of the difference quadratic form restricted to that subspace.
Those probabilities are computed by numerical inversion of the characteristic
function (Imhof's integral), and the critical value is found by bisection.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.integrate import quad
from scipy.special import ndtri

from .errors import (
    DegenerateResidualsError,
    DomainError,
    QuadratureError,
)
from .gls import Problem

__all__ = [
    "PretestFamily",
    "PretestSpec",
    "ImhofInput",
    "dw_statistic",
    "residual_spectrum",
    "imhof_prob_positive",
    "dw_null_cdf",
    "dw_critical_value",
    "tstat_pretest",
    "build_pretest",
    "pretest_spec_to_json",
    "pretest_spec_from_json",
]

#: Absolute tolerance of the Imhof integral.
IMHOF_TOL = 1e-8
#: Truncation tail budget (well below IMHOF_TOL so segmentation error dominates).
_TAIL_TOL = 1e-10
#: Tolerance of the critical-value fixed point |cdf(c) - alpha~|.
CRITICAL_TOL = 1e-6


class PretestFamily(enum.Enum):
    DURBIN_WATSON = "durbin-watson"
    T_STAT = "t-stat"


@dataclass(frozen=True, eq=False)
class PretestSpec:
    """A calibrated pretest: family, size, critical value, and (for DW) spectrum.

    For the Durbin-Watson family the null hypothesis psi = 0 is rejected when
    the statistic is <= critical_value; for the t-statistic family it is
    rejected when the statistic exceeds critical_value (the one-sided normal
    quantile). ``spectrum`` holds the m residual-space eigenvalues for the DW
    family and is empty otherwise.
    """

    family: PretestFamily
    alpha_tilde: float
    critical_value: float
    spectrum: np.ndarray

    def rejects(self, statistic: float) -> bool:
        if self.family is PretestFamily.DURBIN_WATSON:
            return statistic <= self.critical_value
        return statistic > self.critical_value


@dataclass(frozen=True)
class ImhofInput:
    """Weights of independent chi-square(1) terms in a quadratic form."""

    lambdas: np.ndarray

    def __post_init__(self) -> None:
        lam = np.asarray(self.lambdas, dtype=float).reshape(-1)
        if lam.size == 0:
            raise DomainError("weight vector must be nonempty")
        if not np.any(lam):
            raise DomainError("weights must not all be zero")
        object.__setattr__(self, "lambdas", lam)


def dw_statistic(r: np.ndarray) -> float:
    """sum((r_i - r_{i-1})**2) / sum(r_i**2); always in [0, 4]."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.shape[0] < 2:
        raise DomainError("need at least two residuals")
    den = float(r @ r)
    if den == 0.0:
        raise DegenerateResidualsError("residual vector is identically zero")
    d = np.diff(r)
    return float(d @ d) / den


def residual_spectrum(problem: Problem) -> np.ndarray:
    """Eigenvalues of the DW quadratic form restricted to the residual subspace.

    Returns the m = n - p eigenvalues, ascending, of Q' B Q where Q spans the
    orthogonal complement of the design's column space and B is the
    second-difference form underlying the DW numerator. All lie in [0, 4].
    Under the null the statistic is distributed as
    (z' diag(nu) z) / (z' z) with z ~ N(0, I_m).
    """
    q_full = np.linalg.qr(problem.x, mode="complete")[0]
    q_c = q_full[:, problem.p :]
    dq = np.diff(q_c, axis=0)
    values = np.linalg.eigvalsh(dq.T @ dq)
    if values[0] < -1e-8 or values[-1] > 4.0 + 1e-8:
        raise QuadratureError(
            f"residual spectrum escaped [0, 4]: [{values[0]!r}, {values[-1]!r}]"
        )
    return np.clip(values, 0.0, 4.0)


def _imhof_integrand_factory(lam: np.ndarray):
    def integrand(u: float) -> float:
        theta = 0.5 * np.sum(np.arctan(lam * u))
        log_rho = 0.25 * np.sum(np.log1p((lam * u) ** 2))
        return np.sin(theta) * np.exp(-log_rho) / u
    return integrand


def imhof_prob_positive(weights) -> float:
    """P(sum_j lambda_j z_j**2 > 0) for independent standard normal z_j.

    Evaluates Imhof's representation
    P = 1/2 + (1/pi) Int_0^inf sin(theta(u)) / (u rho(u)) du with
    theta(u) = (1/2) sum arctan(lambda_j u), rho(u) = prod (1 + lambda_j^2 u^2)^{1/4}.
    The integral is truncated where a closed-form bound puts the tail below
    1e-10 and accumulated over geometrically growing segments by adaptive
    quadrature, for an overall absolute tolerance of 1e-8.

    Accepts an array of weights or an :class:`ImhofInput`.
    """
    lam = weights.lambdas if isinstance(weights, ImhofInput) else weights
    lam = np.asarray(lam, dtype=float).reshape(-1)
    if lam.size == 0:
        raise DomainError("weight vector must be nonempty")
    if not np.any(lam):
        raise DomainError("weights must not all be zero")
    lam = lam[lam != 0.0]
    if np.all(lam > 0.0):
        return 1.0
    if np.all(lam < 0.0):
        return 0.0

    k = lam.size
    log_prod_sqrt = 0.5 * float(np.sum(np.log(np.abs(lam))))
    # tail bound: (2 / (pi k)) * U**(-k/2) / prod sqrt|lam| <= _TAIL_TOL
    log_u = (2.0 / k) * (
        np.log(2.0 / (np.pi * k * _TAIL_TOL)) - log_prod_sqrt
    )
    upper = float(np.exp(min(log_u, 700.0)))
    start = 1.0 / float(np.max(np.abs(lam)))
    upper = max(upper, 2.0 * start)

    integrand = _imhof_integrand_factory(lam)
    edges = [0.0, start]
    while edges[-1] < upper:
        edges.append(min(edges[-1] * 2.0, upper))
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        res = quad(integrand, a, b, epsabs=1e-11, epsrel=1e-10, limit=200, full_output=1)
        if len(res) > 3:
            raise QuadratureError(
                f"Imhof quadrature failed on [{a:.3g}, {b:.3g}]: {res[3]}"
            )
        total += res[0]
    return float(min(max(0.5 + total / np.pi, 0.0), 1.0))


def dw_null_cdf(c: float, spectrum: np.ndarray) -> float:
    """P(dw <= c) under psi = 0, for the given residual-space spectrum."""
    spectrum = np.asarray(spectrum, dtype=float).reshape(-1)
    weights = spectrum - c
    if not np.any(weights):
        # the statistic is degenerate at exactly c
        return 1.0
    return 1.0 - imhof_prob_positive(weights)


def dw_critical_value(
    alpha_tilde: float, problem: Problem, spectrum: np.ndarray | None = None
) -> float:
    """The cutoff c with P(dw <= c | psi = 0) = alpha_tilde.

    Found by bisection on [0, 4]; the null CDF is continuous and monotone
    there. The two-stage rule rejects the null (and switches to the FGLS
    interval) when the observed statistic is <= this value.
    """
    if not 0.0 < alpha_tilde < 1.0:
        raise DomainError(f"alpha_tilde must lie in (0, 1), got {alpha_tilde!r}")
    if spectrum is None:
        spectrum = residual_spectrum(problem)
    lo, hi = 0.0, 4.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if dw_null_cdf(mid, spectrum) < alpha_tilde:
            lo = mid
        else:
            hi = mid
    c = 0.5 * (lo + hi)
    if abs(dw_null_cdf(c, spectrum) - alpha_tilde) > CRITICAL_TOL:
        raise QuadratureError(
            f"critical value did not converge: cdf({c!r}) = "
            f"{dw_null_cdf(c, spectrum)!r}, target {alpha_tilde!r}"
        )
    return c


def tstat_pretest(r: np.ndarray) -> float:
    """The regression-style t-statistic for the raw sample autocorrelation.

    psi_hat / sqrt((1/(n-2)) sum_{t>=2}(r_t - psi_hat r_{t-1})**2 / sum_{s<n} r_s**2)
    with psi_hat the raw (unclamped) sample autocorrelation. Scale-invariant.
    """
    r = np.asarray(r, dtype=float).reshape(-1)
    n = r.shape[0]
    if n < 3:
        raise DomainError("need at least three residuals")
    den = float(r @ r)
    if den == 0.0:
        raise DegenerateResidualsError("residual vector is identically zero")
    psi_hat = float(r[1:] @ r[:-1]) / den
    lag_ss = float(r[:-1] @ r[:-1])
    innov = r[1:] - psi_hat * r[:-1]
    ms = float(innov @ innov) / (n - 2) / lag_ss if lag_ss > 0.0 else 0.0
    if lag_ss == 0.0 or ms == 0.0:
        raise DegenerateResidualsError("t-statistic denominator is zero")
    return psi_hat / float(np.sqrt(ms))


def build_pretest(
    problem: Problem, family: PretestFamily, alpha_tilde: float
) -> PretestSpec:
    """Calibrate a pretest of size alpha_tilde for the given design."""
    if not 0.0 < alpha_tilde < 1.0:
        raise DomainError(f"alpha_tilde must lie in (0, 1), got {alpha_tilde!r}")
    if family is PretestFamily.DURBIN_WATSON:
        spectrum = residual_spectrum(problem)
        critical = dw_critical_value(alpha_tilde, problem, spectrum)
        return PretestSpec(family, alpha_tilde, critical, spectrum)
    return PretestSpec(
        family, alpha_tilde, float(ndtri(1.0 - alpha_tilde)), np.empty(0)
    )


def pretest_spec_to_json(spec: PretestSpec, problem: Problem) -> dict:
    """Serializable cache of a Durbin-Watson calibration for this design."""
    return {
        "n": problem.n,
        "p": problem.p,
        "alpha_tilde": spec.alpha_tilde,
        "critical_value": spec.critical_value,
        "spectrum": [float(v) for v in spec.spectrum],
    }


def pretest_spec_from_json(payload: dict | str | Path) -> tuple[PretestSpec, int, int]:
    """Inverse of :func:`pretest_spec_to_json`; returns (spec, n, p)."""
    if isinstance(payload, (str, Path)):
        payload = json.loads(Path(payload).read_text())
    spec = PretestSpec(
        family=PretestFamily.DURBIN_WATSON,
        alpha_tilde=float(payload["alpha_tilde"]),
        critical_value=float(payload["critical_value"]),
        spectrum=np.asarray(payload["spectrum"], dtype=float),
    )
    return spec, int(payload["n"]), int(payload["p"])
