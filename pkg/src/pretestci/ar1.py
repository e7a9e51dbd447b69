"""Stationary AR(1) covariance algebra and exact simulation.

The error model is e_t = psi * e_{t-1} + u_t with psi in [0, 1) and iid normal
innovations, so the correlation matrix has (i, j) entry psi**|i - j|. Its
inverse and log-determinant have closed forms (tridiagonal precision,
(n - 1) * log(1 - psi**2)) which this module uses throughout: O(n) work per
operation and no conditioning trouble as psi approaches 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from .errors import DomainError

__all__ = [
    "Ar1Model",
    "ar1_covariance",
    "ar1_precision",
    "ar1_logdet",
    "apply_precision",
    "whiten",
    "simulate_edagger",
    "simulate_edagger_many",
]


def _check_domain(psi: float, n: int, min_n: int = 1) -> None:
    if not 0.0 <= psi < 1.0:
        raise DomainError(f"psi must lie in [0, 1), got {psi!r}")
    if n < min_n:
        raise DomainError(f"n must be >= {min_n}, got {n!r}")


def ar1_covariance(psi: float, n: int) -> np.ndarray:
    """Correlation matrix of n consecutive AR(1) observations.

    Symmetric positive definite Toeplitz matrix with unit diagonal and
    (i, j) entry psi**|i - j|.
    """
    _check_domain(psi, n)
    return toeplitz(psi ** np.arange(n, dtype=float))


def ar1_precision(psi: float, n: int) -> np.ndarray:
    """Exact inverse of ``ar1_covariance(psi, n)``.

    Tridiagonal: 1 / (1 - psi**2) times the matrix with diagonal
    (1, 1 + psi**2, ..., 1 + psi**2, 1) and off-diagonal entries -psi.
    Requires n >= 2 (the closed form has distinct corner entries).
    """
    _check_domain(psi, n, min_n=2)
    scale = 1.0 / (1.0 - psi * psi)
    diag = np.full(n, (1.0 + psi * psi) * scale)
    diag[0] = diag[-1] = scale
    out = np.diag(diag)
    off = np.full(n - 1, -psi * scale)
    out[np.arange(n - 1), np.arange(1, n)] = off
    out[np.arange(1, n), np.arange(n - 1)] = off
    return out


def ar1_logdet(psi: float, n: int) -> float:
    """log-determinant of ``ar1_covariance(psi, n)``: (n - 1) * log(1 - psi**2)."""
    _check_domain(psi, n)
    return (n - 1) * float(np.log1p(-psi * psi))


def apply_precision(psi: float, v: np.ndarray) -> np.ndarray:
    """Tridiagonal product G(psi)^{-1} v without forming the matrix.

    Accepts a vector of length n or an (n, k) column stack; n >= 2.
    """
    v = np.asarray(v, dtype=float)
    _check_domain(psi, v.shape[0], min_n=2)
    out = (1.0 + psi * psi) * v
    out[0] = v[0]
    out[-1] = v[-1]
    out[:-1] -= psi * v[1:]
    out[1:] -= psi * v[:-1]
    out /= 1.0 - psi * psi
    return out


def whiten(psi: float, v: np.ndarray) -> np.ndarray:
    """Prais-Winsten transform T(psi) v.

    Row 0 is scaled by sqrt(1 - psi**2); row t becomes v_t - psi * v_{t-1}.
    T satisfies T'T = (1 - psi**2) * G(psi)^{-1}, so whitened least squares
    reproduces GLS quantities exactly. Accepts a vector or an (n, k) stack.
    """
    v = np.asarray(v, dtype=float)
    _check_domain(psi, v.shape[0])
    out = np.empty_like(v)
    out[0] = np.sqrt(1.0 - psi * psi) * v[0]
    out[1:] = v[1:] - psi * v[:-1]
    return out


def simulate_edagger_many(
    psi: float, n: int, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw `size` independent N(0, G(psi)) vectors as the columns of an (n, size) array.

    Uses the stationary recursion e_1 ~ N(0, 1),
    e_t = psi * e_{t-1} + sqrt(1 - psi**2) * u_t, which is equal in law to a
    dense factorization draw at O(n) cost per vector.
    """
    _check_domain(psi, n)
    if size < 1:
        raise DomainError(f"size must be >= 1, got {size!r}")
    u = rng.standard_normal((n, size))
    out = np.empty_like(u)
    out[0] = u[0]
    scale = np.sqrt(1.0 - psi * psi)
    for t in range(1, n):
        out[t] = psi * out[t - 1] + scale * u[t]
    return out


def simulate_edagger(psi: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw one N(0, G(psi)) vector of length n from the given stream."""
    return simulate_edagger_many(psi, n, 1, rng)[:, 0]


@dataclass(frozen=True)
class Ar1Model:
    """An AR(1) autocorrelation level psi paired with a series length n."""

    psi: float
    n: int

    def __post_init__(self) -> None:
        _check_domain(self.psi, self.n)

    def covariance(self) -> np.ndarray:
        return ar1_covariance(self.psi, self.n)

    def precision(self) -> np.ndarray:
        return ar1_precision(self.psi, self.n)

    def logdet(self) -> float:
        return ar1_logdet(self.psi, self.n)

    def simulate(self, rng: np.random.Generator, size: int = 1) -> np.ndarray:
        return simulate_edagger_many(self.psi, self.n, size, rng)
