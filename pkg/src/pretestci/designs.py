"""Deterministic fixture designs used by the self-check suite, tests and demos.

The noise covariates come from a fixed counter-based stream so every build of
the package ships byte-identical fixtures.
"""

from __future__ import annotations

import numpy as np

from .gls import Problem

__all__ = ["ones_problem", "fixture_problem", "trending_problem"]


def _noise_columns(n: int, count: int, tag: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=np.array([0xF1D0, tag], dtype=np.uint64)))
    return rng.standard_normal((n, count))


def ones_problem(n: int = 20, alpha: float = 0.05) -> Problem:
    """Intercept-only design; the contrast picks the mean."""
    return Problem(x=np.ones((n, 1)), a=np.array([1.0]), alpha=alpha)


def fixture_problem(n: int = 20, alpha: float = 0.05) -> Problem:
    """Intercept, linear trend and one noise covariate; contrast on the noise column."""
    t = np.arange(1, n + 1, dtype=float)
    x = np.column_stack([np.ones(n), t, _noise_columns(n, 1, tag=1)[:, 0]])
    return Problem(x=x, a=np.array([0.0, 0.0, 1.0]), alpha=alpha)


def trending_problem(n: int = 25, alpha: float = 0.05) -> Problem:
    """Intercept, linear trend and two noise covariates; contrast on the trend."""
    t = np.arange(1, n + 1, dtype=float)
    x = np.column_stack([np.ones(n), t, _noise_columns(n, 2, tag=2)])
    return Problem(x=x, a=np.array([0.0, 1.0, 0.0, 0.0]), alpha=alpha)
