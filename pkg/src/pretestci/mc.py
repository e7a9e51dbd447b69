"""Seeded Monte Carlo estimation of coverage probability functions.

The coverage probabilities of the OLS, FGLS and two-stage intervals depend on
the model parameters only through psi, so every estimate here is driven by
draws of the standardized error vector e ~ N(0, G(psi)). Two estimators are
provided per interval kind: brute force (the empirical frequency of the
membership event) and a control variate that exploits the exact pivot at the
true psi,

    P(cover) = 1 - alpha + E[ indicator(candidate interval) - indicator(known-psi interval) ],

whose summand has far smaller variance than the raw indicator because the
candidate interval rarely disagrees with the known-psi one.

Determinism contract: each (seed, psi) pair owns a counter-based Philox
substream, per-draw indicator sums are integer-valued in float64, and the
internal chunk size is a constant, so identical inputs give bit-identical
estimates regardless of threading (parallelism is only across grid cells).
"""

from __future__ import annotations

import enum
import os
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ar1 import simulate_edagger_many, whiten
from .errors import DimensionMismatchError, DomainError
from .estimators import (
    ProfileCache,
    PsiEstimatorKind,
    estimate_psi_many,
    _whiten_design,
    _whiten_rows,
)
from .gls import GlsCache, Problem, confidence_interval, gls_cache
from .pretest import PretestFamily, PretestSpec, dw_statistic, tstat_pretest

__all__ = [
    "IntervalKind",
    "McMethod",
    "SimConfig",
    "CoverageEstimate",
    "DEFAULT_GRID",
    "coverage_bruteforce",
    "coverage_cv_fgls",
    "coverage_cv_twostage",
    "coverage_curve",
    "coverage_curves",
    "relative_efficiency",
    "oracle_check",
    "OracleEntry",
    "OracleReport",
]

#: The 15-point grid used throughout the coverage-curve protocol.
DEFAULT_GRID = tuple(round(0.07 * i, 10) for i in range(15))

#: Draws are processed in fixed-size blocks; a constant so chunking never
#: affects the random stream layout.
_CHUNK = 16384

_MASK64 = (1 << 64) - 1

#: Environment variable controlling grid-cell parallelism.
THREADS_ENV = "PRETESTCI_THREADS"


class IntervalKind(enum.Enum):
    OLS = "ols"
    FGLS = "fgls"
    TWO_STAGE = "two-stage"
    KNOWN_PSI = "known-psi"


class McMethod(enum.Enum):
    BRUTE_FORCE = "brute-force"
    CONTROL_VARIATE = "control-variate"


@dataclass(frozen=True)
class SimConfig:
    """Reproducible simulation protocol for coverage estimates.

    ``pretest`` is only consulted for the two-stage interval; ``method``
    selects the per-cell estimator used by :func:`coverage_curve` (control
    variates exist for the FGLS and two-stage kinds; the others always run
    brute force).
    """

    seed: int
    runs: int = 50_000
    psi_grid: tuple[float, ...] = DEFAULT_GRID
    estimator: PsiEstimatorKind = PsiEstimatorKind.REML
    pretest: PretestSpec | None = None
    method: McMethod = McMethod.CONTROL_VARIATE

    def __post_init__(self) -> None:
        if self.runs < 2:
            raise DomainError(f"need at least 2 runs, got {self.runs!r}")
        grid = tuple(float(v) for v in self.psi_grid)
        if any(not 0.0 <= v < 1.0 for v in grid):
            raise DomainError("grid values must lie in [0, 1)")
        if any(b < a for a, b in zip(grid, grid[1:])):
            raise DomainError("grid values must be ascending")
        object.__setattr__(self, "psi_grid", grid)


@dataclass(frozen=True)
class CoverageEstimate:
    """One cell of a coverage curve."""

    psi: float
    interval_kind: IntervalKind
    estimate: float
    stderr: float
    runs: int
    seed: int
    wall_time: float
    method: McMethod


def _stream_for(seed: int, psi: float) -> np.random.Generator:
    """Counter-based substream keyed by the master seed and the psi value."""
    key = np.array(
        [seed & _MASK64, np.float64(psi).view(np.uint64)], dtype=np.uint64
    )
    return np.random.Generator(np.random.Philox(key=key))


class _Workspace:
    """Design-dependent factorizations shared across cells and draws."""

    def __init__(self, problem: Problem, cfg: SimConfig) -> None:
        self.problem = problem
        self.cfg = cfg
        self.q0 = np.linalg.qr(problem.x)[0]
        self.profile = (
            ProfileCache(problem)
            if cfg.estimator is not PsiEstimatorKind.SAMPLE_ACF
            else None
        )
        self._caches: dict[float, GlsCache] = {}
        self.cache0 = self.cache_at(0.0)
        self.t_crit = self.cache0.t_crit

    def cache_at(self, psi: float) -> GlsCache:
        got = self._caches.get(psi)
        if got is None:
            got = gls_cache(self.problem, psi)
            self._caches[psi] = got
        return got


def _indicators_fixed(cache: GlsCache, data: np.ndarray, theta: float) -> np.ndarray:
    """Membership indicators for an (n, k) stack of data columns at a fixed psi."""
    vt = whiten(cache.psi, data)
    z = cache.q.T @ vt
    center = cache.u @ z
    rss = np.einsum("nk,nk->k", vt, vt) - np.einsum("pk,pk->k", z, z)
    np.clip(rss, 0.0, None, out=rss)
    bound = cache.t_crit * np.sqrt(float(cache.u @ cache.u)) * np.sqrt(rss / cache.m)
    return np.abs(center - theta) <= bound


def _indicators_at(
    problem: Problem, psis: np.ndarray, rows: np.ndarray, theta: float, t_crit: float
) -> np.ndarray:
    """Membership indicators with a separate psi per draw (rows of shape (k, n))."""
    xt = _whiten_design(psis, problem.x)
    q, r = np.linalg.qr(xt)
    u = np.linalg.solve(
        np.transpose(r, (0, 2, 1)),
        np.broadcast_to(problem.a, (psis.shape[0], problem.p))[..., None],
    )[..., 0]
    vt = _whiten_rows(psis, rows)
    z = np.einsum("knp,kn->kp", q, vt)
    center = np.einsum("kp,kp->k", u, z)
    rss = np.einsum("kn,kn->k", vt, vt) - np.einsum("kp,kp->k", z, z)
    np.clip(rss, 0.0, None, out=rss)
    bound = t_crit * np.sqrt(np.einsum("kp,kp->k", u, u)) * np.sqrt(rss / problem.m)
    return np.abs(center - theta) <= bound


def _pretest_accepts(
    spec: PretestSpec, resid: np.ndarray, n: int
) -> np.ndarray:
    """Vectorized accept-the-null mask for residual columns (n, k)."""
    den = np.einsum("nk,nk->k", resid, resid)
    if spec.family is PretestFamily.DURBIN_WATSON:
        diffs = np.diff(resid, axis=0)
        stat = np.einsum("nk,nk->k", diffs, diffs) / den
        return stat > spec.critical_value
    psi_hat = np.einsum("nk,nk->k", resid[1:], resid[:-1]) / den
    lag_ss = np.einsum("nk,nk->k", resid[:-1], resid[:-1])
    innov = resid[1:] - psi_hat[None, :] * resid[:-1]
    ms = np.einsum("nk,nk->k", innov, innov) / (n - 2) / lag_ss
    stat = psi_hat / np.sqrt(ms)
    return stat <= spec.critical_value


def _run_cell(
    problem: Problem,
    psi: float,
    cfg: SimConfig,
    kinds: tuple[IntervalKind, ...],
    ws: _Workspace,
    collect: bool = False,
    beta: np.ndarray | None = None,
    sigma: float = 1.0,
):
    """Simulate one grid cell and accumulate indicator statistics per kind.

    Returns ``(stats, arrays)`` where ``stats[kind]`` is a dict with the
    indicator count plus the control-variate sums (sum and sum of squares of
    indicator - known-psi indicator), and ``arrays`` optionally holds the full
    per-draw indicator vectors (including the known-psi ones under
    ``IntervalKind.KNOWN_PSI``).
    """
    if IntervalKind.TWO_STAGE in kinds and cfg.pretest is None:
        raise DomainError("the two-stage interval needs cfg.pretest")
    need_estimates = any(
        k in (IntervalKind.FGLS, IntervalKind.TWO_STAGE) for k in kinds
    )
    rng = _stream_for(cfg.seed, psi)
    truth = ws.cache_at(psi)
    n = problem.n
    shift = None
    theta = 0.0
    if beta is not None:
        beta = np.asarray(beta, dtype=float).reshape(-1)
        shift = problem.x @ beta
        theta = float(problem.a @ beta)

    stats = {k: {"count": 0.0, "dsum": 0.0, "dsumsq": 0.0} for k in kinds}
    chunks: dict[IntervalKind, list[np.ndarray]] = {k: [] for k in kinds}
    true_chunks: list[np.ndarray] = []

    done = 0
    while done < cfg.runs:
        k = min(_CHUNK, cfg.runs - done)
        e = simulate_edagger_many(psi, n, k, rng)
        data = e if shift is None else shift[:, None] + sigma * e
        h_true = _indicators_fixed(truth, data, theta)

        h_fgls = None
        if need_estimates:
            rows = np.ascontiguousarray(data.T)
            psi_hats = estimate_psi_many(cfg.estimator, rows, problem, ws.profile)
            h_fgls = _indicators_at(problem, psi_hats, rows, theta, ws.t_crit)
        h_ols = None
        if IntervalKind.OLS in kinds or IntervalKind.TWO_STAGE in kinds:
            h_ols = _indicators_fixed(ws.cache0, data, theta)

        for kind in kinds:
            if kind is IntervalKind.KNOWN_PSI:
                h = h_true
            elif kind is IntervalKind.OLS:
                h = h_ols
            elif kind is IntervalKind.FGLS:
                h = h_fgls
            else:
                resid = data - ws.q0 @ (ws.q0.T @ data)
                accepts = _pretest_accepts(cfg.pretest, resid, n)
                h = np.where(accepts, h_ols, h_fgls)
            delta = h.astype(np.float64) - h_true.astype(np.float64)
            st = stats[kind]
            st["count"] += float(np.sum(h))
            st["dsum"] += float(np.sum(delta))
            st["dsumsq"] += float(np.sum(delta * delta))
            if collect:
                chunks[kind].append(h.copy())
        if collect:
            true_chunks.append(h_true.copy())
        done += k

    arrays = None
    if collect:
        arrays = {kind: np.concatenate(chunks[kind]) for kind in kinds}
        arrays[IntervalKind.KNOWN_PSI] = np.concatenate(true_chunks)
    return stats, arrays


def _brute_estimate(
    kind: IntervalKind, psi: float, cfg: SimConfig, st: dict, wall: float
) -> CoverageEstimate:
    p_hat = st["count"] / cfg.runs
    stderr = float(np.sqrt(p_hat * (1.0 - p_hat) / cfg.runs))
    return CoverageEstimate(
        psi=psi,
        interval_kind=kind,
        estimate=p_hat,
        stderr=stderr,
        runs=cfg.runs,
        seed=cfg.seed,
        wall_time=wall,
        method=McMethod.BRUTE_FORCE,
    )


def _cv_estimate(
    kind: IntervalKind,
    psi: float,
    problem: Problem,
    cfg: SimConfig,
    st: dict,
    wall: float,
) -> CoverageEstimate:
    mean = st["dsum"] / cfg.runs
    var = (st["dsumsq"] - st["dsum"] ** 2 / cfg.runs) / (cfg.runs - 1)
    return CoverageEstimate(
        psi=psi,
        interval_kind=kind,
        estimate=(1.0 - problem.alpha) + mean,
        stderr=float(np.sqrt(max(var, 0.0) / cfg.runs)),
        runs=cfg.runs,
        seed=cfg.seed,
        wall_time=wall,
        method=McMethod.CONTROL_VARIATE,
    )


def coverage_bruteforce(
    kind: IntervalKind, psi: float, problem: Problem, cfg: SimConfig
) -> CoverageEstimate:
    """Empirical coverage frequency of one interval kind at one psi.

    Deterministic given (seed, psi, config); the standard error is the
    binomial one, so it never exceeds 0.5 / sqrt(runs).
    """
    ws = _Workspace(problem, cfg)
    ws.cache_at(psi)
    t0 = time.perf_counter()
    stats, _ = _run_cell(problem, psi, cfg, (kind,), ws)
    wall = time.perf_counter() - t0
    return _brute_estimate(kind, psi, cfg, stats[kind], wall)


def coverage_cv_fgls(psi: float, problem: Problem, cfg: SimConfig) -> CoverageEstimate:
    """Control-variate estimate of the FGLS interval's coverage at psi.

    Unbiased for the same quantity as the brute-force estimator; the summand
    is the difference between the estimated-psi and known-psi indicators.
    """
    ws = _Workspace(problem, cfg)
    ws.cache_at(psi)
    t0 = time.perf_counter()
    stats, _ = _run_cell(problem, psi, cfg, (IntervalKind.FGLS,), ws)
    wall = time.perf_counter() - t0
    return _cv_estimate(IntervalKind.FGLS, psi, problem, cfg, stats[IntervalKind.FGLS], wall)


def coverage_cv_twostage(
    psi: float, problem: Problem, cfg: SimConfig
) -> CoverageEstimate:
    """Control-variate estimate of the two-stage interval's coverage at psi.

    Uses the known-psi indicator as the control variate against the full
    two-stage indicator (OLS interval when the pretest accepts, FGLS
    otherwise). This is a reconstruction of the unpublished variance
    reduction: it follows the same identity as the FGLS estimator and
    collapses to it when the pretest always rejects.
    """
    ws = _Workspace(problem, cfg)
    ws.cache_at(psi)
    t0 = time.perf_counter()
    stats, _ = _run_cell(problem, psi, cfg, (IntervalKind.TWO_STAGE,), ws)
    wall = time.perf_counter() - t0
    return _cv_estimate(
        IntervalKind.TWO_STAGE, psi, problem, cfg, stats[IntervalKind.TWO_STAGE], wall
    )


def _nan_estimate(kind, psi, cfg, method) -> CoverageEstimate:
    return CoverageEstimate(
        psi=psi,
        interval_kind=kind,
        estimate=float("nan"),
        stderr=float("nan"),
        runs=cfg.runs,
        seed=cfg.seed,
        wall_time=0.0,
        method=method,
    )


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def coverage_curves(
    kinds: tuple[IntervalKind, ...], problem: Problem, cfg: SimConfig
) -> dict[IntervalKind, list[CoverageEstimate]]:
    """Coverage estimates for several interval kinds on the whole psi grid.

    All kinds share each cell's error draws (common random numbers), which
    sharpens pointwise curve comparisons; use distinct seeds for independent
    streams. Cells are independent and may be computed in parallel
    (PRETESTCI_THREADS); a cell that fails numerically is recorded as NaN and
    the curve continues.
    """
    ws = _Workspace(problem, cfg)
    for psi in cfg.psi_grid:
        ws.cache_at(psi)

    def one_cell(psi: float):
        method = {
            kind: cfg.method
            if kind in (IntervalKind.FGLS, IntervalKind.TWO_STAGE)
            else McMethod.BRUTE_FORCE
            for kind in kinds
        }
        try:
            t0 = time.perf_counter()
            stats, _ = _run_cell(problem, psi, cfg, kinds, ws)
            wall = time.perf_counter() - t0
        except Exception as exc:  # noqa: BLE001 - cell failures must not kill the curve
            warnings.warn(f"coverage cell psi={psi:.6g} failed: {exc}", stacklevel=2)
            return {kind: _nan_estimate(kind, psi, cfg, method[kind]) for kind in kinds}
        out = {}
        for kind in kinds:
            if method[kind] is McMethod.CONTROL_VARIATE:
                out[kind] = _cv_estimate(kind, psi, problem, cfg, stats[kind], wall)
            else:
                out[kind] = _brute_estimate(kind, psi, cfg, stats[kind], wall)
        return out

    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(one_cell, cfg.psi_grid))
    else:
        cells = [one_cell(psi) for psi in cfg.psi_grid]
    return {kind: [cell[kind] for cell in cells] for kind in kinds}


def coverage_curve(
    kind: IntervalKind, problem: Problem, cfg: SimConfig
) -> list[CoverageEstimate]:
    """Coverage estimates for one interval kind at every grid psi."""
    return coverage_curves((kind,), problem, cfg)[kind]


def relative_efficiency(a: CoverageEstimate, b: CoverageEstimate) -> float:
    """Cost ratio (stderr_a**2 * time_a) / (stderr_b**2 * time_b).

    The factor by which estimator b beats estimator a at matched accuracy;
    infinite when b achieved zero standard error. Both estimates must target
    the same quantity.
    """
    if a.interval_kind is not b.interval_kind or a.psi != b.psi:
        raise DomainError("estimates target different quantities")
    denominator = b.stderr**2 * b.wall_time
    if denominator == 0.0:
        return float("inf")
    return (a.stderr**2 * a.wall_time) / denominator


@dataclass(frozen=True)
class OracleEntry:
    """Outcome of one indicator-sequence comparison."""

    kind: IntervalKind
    label: str
    mismatches: int
    first_mismatch: int | None
    estimate_delta: float


@dataclass(frozen=True)
class OracleReport:
    """Cross-validation of the engine against direct response-space simulation."""

    psi: float
    runs: int
    seed: int
    entries: tuple[OracleEntry, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(e.mismatches == 0 and e.estimate_delta == 0.0 for e in self.entries)


def _direct_y_indicators(
    problem: Problem,
    psi: float,
    cfg: SimConfig,
    kinds: tuple[IntervalKind, ...],
    beta: np.ndarray,
    sigma2: float,
    ws: _Workspace,
) -> dict[IntervalKind, np.ndarray]:
    """Simulate responses y = X beta + sigma e and test interval membership directly.

    Per draw this goes through the public scalar interval machinery
    (confidence_interval / Interval.contains and the pretest statistics), so
    it is an independent route to the same events as the engine's
    standardized-error form.
    """
    rng = _stream_for(cfg.seed, psi)
    sigma = float(np.sqrt(sigma2))
    theta = float(problem.a @ beta)
    shift = problem.x @ beta
    out = {kind: [] for kind in kinds}
    done = 0
    while done < cfg.runs:
        k = min(_CHUNK, cfg.runs - done)
        e = simulate_edagger_many(psi, problem.n, k, rng)
        ys = shift[:, None] + sigma * e
        psi_hats = None
        if any(kd in (IntervalKind.FGLS, IntervalKind.TWO_STAGE) for kd in kinds):
            psi_hats = estimate_psi_many(
                cfg.estimator, np.ascontiguousarray(ys.T), problem, ws.profile
            )
        for i in range(k):
            y = ys[:, i]
            for kind in kinds:
                if kind is IntervalKind.KNOWN_PSI:
                    psi_tilde = psi
                elif kind is IntervalKind.OLS:
                    psi_tilde = 0.0
                elif kind is IntervalKind.FGLS:
                    psi_tilde = float(psi_hats[i])
                else:
                    resid = y - ws.q0 @ (ws.q0.T @ y)
                    stat = (
                        dw_statistic(resid)
                        if cfg.pretest.family is PretestFamily.DURBIN_WATSON
                        else tstat_pretest(resid)
                    )
                    psi_tilde = float(psi_hats[i]) if cfg.pretest.rejects(stat) else 0.0
                interval = confidence_interval(y, psi_tilde, problem)
                out[kind].append(interval.contains(theta))
        done += k
    return {kind: np.asarray(vals, dtype=bool) for kind, vals in out.items()}


def oracle_check(
    problem: Problem,
    psi: float,
    cfg: SimConfig,
    beta: np.ndarray | None = None,
    sigma2: float = 7.0,
) -> OracleReport:
    """Verify parameter invariance of the coverage events on matched draws.

    Runs the engine's standardized-error form and the direct response-space
    simulation for (beta, sigma^2) = (0, 1) and (``beta``, ``sigma2``) on the
    same substream, comparing per-draw indicator sequences and estimates. Any
    discrepancy is reported with the first offending draw index. Intended for
    modest run counts (~1e4).
    """
    if beta is None:
        beta = np.ones(problem.p)
    beta = np.asarray(beta, dtype=float).reshape(-1)
    if beta.shape[0] != problem.p:
        raise DimensionMismatchError(
            f"beta has length {beta.shape[0]}, design has {problem.p} columns"
        )
    kinds = (
        (IntervalKind.OLS, IntervalKind.FGLS, IntervalKind.TWO_STAGE)
        if cfg.pretest is not None
        else (IntervalKind.OLS, IntervalKind.FGLS)
    )
    ws = _Workspace(problem, cfg)
    ws.cache_at(psi)
    _, engine = _run_cell(problem, psi, cfg, kinds, ws, collect=True)

    entries = []
    for label, b_vec, s2 in (
        ("beta=0, sigma2=1", np.zeros(problem.p), 1.0),
        (f"beta=fixture, sigma2={sigma2:g}", beta, sigma2),
    ):
        direct = _direct_y_indicators(problem, psi, cfg, kinds, b_vec, s2, ws)
        for kind in kinds:
            diff = engine[kind] != direct[kind]
            n_bad = int(np.sum(diff))
            first = int(np.flatnonzero(diff)[0]) if n_bad else None
            delta = float(np.mean(engine[kind]) - np.mean(direct[kind]))
            entries.append(
                OracleEntry(
                    kind=kind,
                    label=label,
                    mismatches=n_bad,
                    first_mismatch=first,
                    estimate_delta=delta,
                )
            )
    return OracleReport(
        psi=psi, runs=cfg.runs, seed=cfg.seed, entries=tuple(entries)
    )
