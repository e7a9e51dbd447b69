"""Command-line interface: ingest designs, run the simulators, emit tables.

Subcommands
-----------
interval        confidence interval for an observed response vector
critical-value  Durbin-Watson cutoff and residual spectrum as JSON
coverage-curve  coverage-vs-psi table for one interval kind
compare         FGLS and two-stage curves on shared random numbers
efficiency      brute-force vs control-variate cost comparison at one psi
self-check      correctness oracles and invariant battery; nonzero exit on failure

Exit codes: 0 success, 1 failed self-check or unexpected error, 2 dimension or
value error, 3 file-system error (unreadable input / unwritable output),
4 non-numeric CSV cell, 5 rank-deficient or ill-conditioned design,
6 numerical failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .designs import fixture_problem, ones_problem
from .errors import (
    CsvParseError,
    DimensionMismatchError,
    DomainError,
    IllConditionedDesignError,
    PretestCIError,
    QuadratureError,
    RankDeficientDesignError,
)
from .estimators import PsiEstimatorKind, estimate_psi, ols_residuals
from .gls import Problem, confidence_interval
from .mc import (
    CoverageEstimate,
    IntervalKind,
    McMethod,
    SimConfig,
    coverage_bruteforce,
    coverage_curves,
    coverage_cv_fgls,
    coverage_cv_twostage,
    oracle_check,
    relative_efficiency,
)
from .pretest import (
    PretestFamily,
    build_pretest,
    dw_statistic,
    pretest_spec_to_json,
    tstat_pretest,
)

__all__ = [
    "RunManifest",
    "CurveRecord",
    "ingest_problem",
    "parse_grid",
    "emit_outputs",
    "run_subcommand",
    "main",
]

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DIMENSION = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_RANK = 5
EXIT_NUMERIC = 6
EXIT_USAGE = 64

_Z95 = 1.96


@dataclasses.dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a run byte-for-byte (modulo timestamp)."""

    command: str
    x_path: str
    a_spec: str
    n: int
    p: int
    alpha: float
    alpha_tilde: float | None
    estimator: str
    pretest_family: str | None
    grid_spec: str
    grid: list[float]
    runs: int
    seed: int
    method: str
    version: str
    created_utc: str


@dataclasses.dataclass(frozen=True)
class CurveRecord:
    """One row of curves.csv; ci bounds are estimate -/+ 1.96 stderr, clamped to [0, 1]."""

    psi: float
    interval_kind: str
    estimate: float
    stderr: float
    ci_low: float
    ci_high: float
    runs: int
    seed: int

    @classmethod
    def from_estimate(cls, est: CoverageEstimate) -> "CurveRecord":
        return cls(
            psi=est.psi,
            interval_kind=est.interval_kind.value,
            estimate=est.estimate,
            stderr=est.stderr,
            ci_low=max(est.estimate - _Z95 * est.stderr, 0.0),
            ci_high=min(est.estimate + _Z95 * est.stderr, 1.0),
            runs=est.runs,
            seed=est.seed,
        )


class _Parser(argparse.ArgumentParser):
    """argparse with the conventional 64 exit status for usage errors."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with_usage(message))

    def exit_with_usage(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE


def _read_rows(path: str, header: bool) -> list[list[float]]:
    rows: list[list[float]] = []
    with open(path, newline="") as fh:
        for file_row, cells in enumerate(csv.reader(fh), start=1):
            if not cells or all(not c.strip() for c in cells):
                continue
            if header and not rows and file_row == 1:
                continue
            parsed = []
            for col, cell in enumerate(cells, start=1):
                try:
                    parsed.append(float(cell))
                except ValueError:
                    raise CsvParseError(
                        f"non-numeric value {cell.strip()!r} at row {file_row}, "
                        f"column {col} of {path}",
                        row=file_row,
                        col=col,
                    ) from None
            rows.append(parsed)
    if not rows:
        raise DimensionMismatchError(f"no numeric rows found in {path}")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DimensionMismatchError(
            f"ragged CSV in {path}: row lengths {sorted(widths)}"
        )
    return rows


def _parse_contrast(a_spec: str, header: bool) -> np.ndarray:
    if os.path.isfile(a_spec):
        rows = _read_rows(a_spec, header)
        return np.asarray(rows, dtype=float).reshape(-1)
    try:
        return np.asarray(
            [float(tok) for tok in a_spec.split(",") if tok.strip()], dtype=float
        )
    except ValueError:
        raise CsvParseError(f"could not parse contrast {a_spec!r}") from None


def ingest_problem(
    x_path: str, a_spec: str, alpha: float, header: bool = False
) -> Problem:
    """Load a design matrix CSV and a contrast (inline list or file path)."""
    x = np.asarray(_read_rows(x_path, header), dtype=float)
    a = _parse_contrast(a_spec, header)
    if a.shape[0] != x.shape[1]:
        raise DimensionMismatchError(
            f"contrast has length {a.shape[0]}, design {x_path} has {x.shape[1]} columns"
        )
    return Problem(x=x, a=a, alpha=alpha)


def _read_vector(path: str, header: bool, expected: int, what: str) -> np.ndarray:
    v = np.asarray(_read_rows(path, header), dtype=float).reshape(-1)
    if v.shape[0] != expected:
        raise DimensionMismatchError(
            f"{what} has {v.shape[0]} values, expected {expected}"
        )
    return v


def parse_grid(spec: str) -> tuple[float, ...]:
    """Parse start:stop:step with inclusive endpoints, e.g. 0:0.98:0.07."""
    try:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError:
        raise DomainError(f"grid must look like start:stop:step, got {spec!r}") from None
    if step <= 0 or stop < start:
        raise DomainError(f"grid {spec!r} must have step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    values = tuple(round(start + i * step, 10) for i in range(count))
    if abs(values[-1] - stop) > 1e-9:
        raise DomainError(f"grid {spec!r}: step does not divide the range")
    return values


def emit_outputs(
    records: list[CurveRecord], manifest: RunManifest, out_dir: str | Path
) -> list[Path]:
    """Write curves.csv, manifest.json and gnuplot companions to out_dir."""
    if not records:
        raise DomainError("no records to emit")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    curves = out / "curves.csv"
    with open(curves, "w", newline="\n") as fh:
        fh.write("psi,interval_kind,estimate,stderr,ci_low,ci_high,M,seed\n")
        for rec in records:
            fh.write(
                f"{rec.psi!r},{rec.interval_kind},{rec.estimate!r},{rec.stderr!r},"
                f"{rec.ci_low!r},{rec.ci_high!r},{rec.runs},{rec.seed}\n"
            )
    written.append(curves)

    manifest_path = out / "manifest.json"
    manifest_path.write_text(
        json.dumps(dataclasses.asdict(manifest), indent=2, sort_keys=True) + "\n"
    )
    written.append(manifest_path)

    kinds = []
    for rec in records:
        if rec.interval_kind not in kinds:
            kinds.append(rec.interval_kind)
    for kind in kinds:
        dat = out / f"curve_{kind.replace('-', '_')}.dat"
        with open(dat, "w", newline="\n") as fh:
            fh.write("# psi estimate ci_low ci_high stderr\n")
            for rec in records:
                if rec.interval_kind == kind:
                    fh.write(
                        f"{rec.psi!r} {rec.estimate!r} {rec.ci_low!r} "
                        f"{rec.ci_high!r} {rec.stderr!r}\n"
                    )
        written.append(dat)

    plot = out / "plot.gp"
    lines = [
        "# gnuplot script for the emitted coverage curves",
        "set xlabel 'psi'",
        "set ylabel 'coverage probability'",
        "set yrange [0:1.02]",
        "set key bottom left",
        "plot \\",
    ]
    plot_parts = [
        f"  'curve_{kind.replace('-', '_')}.dat' using 1:2:3:4 "
        f"with yerrorlines title '{kind}'"
        for kind in kinds
    ]
    lines.append(", \\\n".join(plot_parts))
    plot.write_text("\n".join(lines) + "\n")
    written.append(plot)
    return written


def _build_manifest(args, problem: Problem, command: str, grid, method: str) -> RunManifest:
    return RunManifest(
        command=command,
        x_path=args.x,
        a_spec=args.a,
        n=problem.n,
        p=problem.p,
        alpha=problem.alpha,
        alpha_tilde=getattr(args, "alpha_tilde", None),
        estimator=args.estimator,
        pretest_family=getattr(args, "pretest", None),
        grid_spec=getattr(args, "grid", ""),
        grid=[float(v) for v in grid],
        runs=args.runs,
        seed=args.seed,
        method=method,
        version=__version__,
        created_utc=datetime.now(timezone.utc).isoformat(),
    )


def _make_config(args, problem: Problem, grid, method: McMethod) -> SimConfig:
    estimator = PsiEstimatorKind(args.estimator)
    pretest = None
    if getattr(args, "alpha_tilde", None) is not None and hasattr(args, "pretest"):
        pretest = build_pretest(problem, PretestFamily(args.pretest), args.alpha_tilde)
    return SimConfig(
        seed=args.seed,
        runs=args.runs,
        psi_grid=grid,
        estimator=estimator,
        pretest=pretest,
        method=method,
    )


def _emit_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_interval(args) -> int:
    problem = ingest_problem(args.x, args.a, args.alpha, args.header)
    y = _read_vector(args.y, args.header, problem.n, "response")
    estimator = PsiEstimatorKind(args.estimator)
    payload: dict = {"kind": args.kind, "alpha": args.alpha}
    if args.kind == "ols":
        psi_tilde = 0.0
    elif args.kind == "fixed":
        if args.psi is None:
            raise DomainError("--psi is required for --kind fixed")
        psi_tilde = args.psi
    elif args.kind == "fgls":
        psi_tilde = estimate_psi(estimator, y, problem)
        payload["estimator"] = estimator.value
    else:  # two-stage
        spec = build_pretest(problem, PretestFamily(args.pretest), args.alpha_tilde)
        resid = ols_residuals(problem, y)
        stat = (
            dw_statistic(resid)
            if spec.family is PretestFamily.DURBIN_WATSON
            else tstat_pretest(resid)
        )
        rejected = spec.rejects(stat)
        psi_tilde = estimate_psi(estimator, y, problem) if rejected else 0.0
        payload["estimator"] = estimator.value
        payload["pretest"] = {
            "family": spec.family.value,
            "alpha_tilde": spec.alpha_tilde,
            "statistic": stat,
            "critical_value": spec.critical_value,
            "rejected_null": bool(rejected),
        }
    interval = confidence_interval(y, psi_tilde, problem)
    payload.update(
        psi_tilde=psi_tilde,
        center=interval.center,
        half_width=interval.half_width,
        lower=interval.lower,
        upper=interval.upper,
    )
    _emit_json(payload, args.out)
    return EXIT_OK


def _cmd_critical_value(args) -> int:
    x = np.asarray(_read_rows(args.x, args.header), dtype=float)
    unit = np.zeros(x.shape[1])
    unit[0] = 1.0  # the cutoff depends on the design only, not the contrast
    problem = Problem(x=x, a=unit, alpha=args.alpha)
    spec = build_pretest(problem, PretestFamily.DURBIN_WATSON, args.alpha_tilde)
    _emit_json(pretest_spec_to_json(spec, problem), args.out)
    return EXIT_OK


_KIND_FLAGS = {
    "ols": IntervalKind.OLS,
    "fgls": IntervalKind.FGLS,
    "two-stage": IntervalKind.TWO_STAGE,
    "known-psi": IntervalKind.KNOWN_PSI,
}


def _cmd_coverage_curve(args) -> int:
    problem = ingest_problem(args.x, args.a, args.alpha, args.header)
    grid = parse_grid(args.grid)
    method = McMethod(args.method)
    cfg = _make_config(args, problem, grid, method)
    kind = _KIND_FLAGS[args.kind]
    if kind is IntervalKind.TWO_STAGE and cfg.pretest is None:
        raise DomainError("two-stage curves need --alpha-tilde")
    curves = coverage_curves((kind,), problem, cfg)
    records = [CurveRecord.from_estimate(e) for e in curves[kind]]
    manifest = _build_manifest(args, problem, "coverage-curve", grid, method.value)
    emit_outputs(records, manifest, args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    problem = ingest_problem(args.x, args.a, args.alpha, args.header)
    grid = parse_grid(args.grid)
    method = McMethod(args.method)
    cfg = _make_config(args, problem, grid, method)
    kinds = (IntervalKind.FGLS, IntervalKind.TWO_STAGE)
    if args.independent_streams:
        fgls = coverage_curves((IntervalKind.FGLS,), problem, cfg)[IntervalKind.FGLS]
        cfg2 = dataclasses.replace(cfg, seed=cfg.seed + 1)
        two = coverage_curves((IntervalKind.TWO_STAGE,), problem, cfg2)[
            IntervalKind.TWO_STAGE
        ]
    else:
        both = coverage_curves(kinds, problem, cfg)
        fgls, two = both[IntervalKind.FGLS], both[IntervalKind.TWO_STAGE]
    records = [CurveRecord.from_estimate(e) for e in fgls]
    records += [CurveRecord.from_estimate(e) for e in two]
    manifest = _build_manifest(args, problem, "compare", grid, method.value)
    emit_outputs(records, manifest, args.out)
    return EXIT_OK


def _cmd_efficiency(args) -> int:
    problem = ingest_problem(args.x, args.a, args.alpha, args.header)
    cfg = _make_config(args, problem, (args.psi,), McMethod.CONTROL_VARIATE)
    kind = _KIND_FLAGS[args.kind]
    if kind is IntervalKind.TWO_STAGE:
        if cfg.pretest is None:
            raise DomainError("two-stage efficiency needs --alpha-tilde")
        cv = coverage_cv_twostage(args.psi, problem, cfg)
    elif kind is IntervalKind.FGLS:
        cv = coverage_cv_fgls(args.psi, problem, cfg)
    else:
        raise DomainError("efficiency compares estimators for fgls or two-stage")
    brute = coverage_bruteforce(kind, args.psi, problem, cfg)
    payload = {
        "psi": args.psi,
        "interval_kind": kind.value,
        "runs": args.runs,
        "seed": args.seed,
        "brute_force": {
            "estimate": brute.estimate,
            "stderr": brute.stderr,
            "wall_time": brute.wall_time,
        },
        "control_variate": {
            "estimate": cv.estimate,
            "stderr": cv.stderr,
            "wall_time": cv.wall_time,
        },
        "relative_efficiency": relative_efficiency(brute, cv),
        "variance_ratio": (
            (brute.stderr / cv.stderr) ** 2 if cv.stderr > 0 else float("inf")
        ),
    }
    _emit_json(payload, args.out)
    return EXIT_OK


def _selfcheck_problems(args):
    if args.x:
        if args.a is None:
            raise DomainError("--a is required when --x is given")
        yield "user design", ingest_problem(args.x, args.a, args.alpha, args.header)
    else:
        yield "intercept-only fixture", ones_problem()
        yield "trend+noise fixture", fixture_problem()


def _cmd_self_check(args) -> int:
    from .ar1 import ar1_covariance, ar1_logdet, ar1_precision
    from .pretest import dw_critical_value, dw_null_cdf, imhof_prob_positive, residual_spectrum

    failures: list[str] = []

    def check(name: str, ok: bool) -> None:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    for psi in (0.0, 0.5, 0.9):
        prod = ar1_precision(psi, 12) @ ar1_covariance(psi, 12)
        check(
            f"precision x covariance = identity (psi={psi})",
            bool(np.max(np.abs(prod - np.eye(12))) < 1e-10),
        )
        dense = np.linalg.slogdet(ar1_covariance(psi, 12))[1]
        check(
            f"closed-form log-determinant (psi={psi})",
            abs(ar1_logdet(psi, 12) - dense) < 1e-8,
        )
    check(
        "Imhof symmetric weights give exactly 1/2",
        abs(imhof_prob_positive(np.array([1.0, -1.0])) - 0.5) < 1e-8,
    )
    check(
        "Imhof matches the Cauchy-ratio closed form",
        abs(
            imhof_prob_positive(np.array([2.0, -1.0]))
            - 2.0 / np.pi * np.arctan(np.sqrt(2.0))
        )
        < 1e-6,
    )

    for label, problem in _selfcheck_problems(args):
        from .gls import gls_cache

        cache = gls_cache(problem, 0.7)
        check(
            f"unbiasedness identity b'X = a' ({label})",
            bool(np.max(np.abs(cache.b @ problem.x - problem.a)) < 1e-10),
        )
        spectrum = residual_spectrum(problem)
        check(
            f"residual spectrum inside [0, 4] ({label})",
            bool(spectrum[0] >= 0.0 and spectrum[-1] <= 4.0),
        )
        c = dw_critical_value(0.05, problem, spectrum)
        check(
            f"critical-value fixed point ({label})",
            abs(dw_null_cdf(c, spectrum) - 0.05) < 1e-6,
        )
        pretest = build_pretest(problem, PretestFamily.DURBIN_WATSON, 0.05)
        cfg = SimConfig(
            seed=args.seed,
            runs=args.runs,
            psi_grid=(0.0,),
            estimator=PsiEstimatorKind(args.estimator),
            pretest=pretest,
        )
        report = oracle_check(problem, args.psi, cfg)
        for entry in report.entries:
            check(
                f"direct-y oracle: {entry.kind.value} [{entry.label}] ({label})",
                entry.mismatches == 0 and entry.estimate_delta == 0.0,
            )

    if failures:
        print(f"{len(failures)} check(s) failed", file=sys.stderr)
        return EXIT_FAILURE
    print("all checks passed")
    return EXIT_OK


def _add_common_design_flags(sub, with_contrast: bool = True) -> None:
    sub.add_argument("--x", required=True, help="design matrix CSV")
    if with_contrast:
        sub.add_argument("--a", required=True, help="contrast: inline like 0,0,1 or a CSV path")
    sub.add_argument("--alpha", type=float, default=0.05, help="1 - nominal coverage")
    sub.add_argument(
        "--header", action="store_true", help="skip one header row in input CSVs"
    )


def _add_sim_flags(sub) -> None:
    sub.add_argument("--runs", type=int, default=50_000, help="simulation runs per cell")
    sub.add_argument("--seed", type=int, required=True, help="master seed (no default)")
    sub.add_argument(
        "--estimator",
        choices=[k.value for k in PsiEstimatorKind],
        default=PsiEstimatorKind.REML.value,
    )
    sub.add_argument(
        "--pretest",
        choices=[f.value for f in PretestFamily],
        default=PretestFamily.DURBIN_WATSON.value,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pretestci", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pretestci {__version__}")
    subs = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = subs.add_parser("interval", help="confidence interval for an observed response")
    _add_common_design_flags(p)
    p.add_argument("--y", required=True, help="response vector CSV")
    p.add_argument(
        "--kind", choices=["ols", "fgls", "two-stage", "fixed"], default="two-stage"
    )
    p.add_argument("--psi", type=float, default=None, help="psi for --kind fixed")
    p.add_argument("--alpha-tilde", type=float, default=0.05, dest="alpha_tilde")
    p.add_argument(
        "--estimator",
        choices=[k.value for k in PsiEstimatorKind],
        default=PsiEstimatorKind.REML.value,
    )
    p.add_argument(
        "--pretest",
        choices=[f.value for f in PretestFamily],
        default=PretestFamily.DURBIN_WATSON.value,
    )
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=_cmd_interval)

    p = subs.add_parser("critical-value", help="Durbin-Watson cutoff for a design")
    _add_common_design_flags(p, with_contrast=False)
    p.add_argument("--alpha-tilde", type=float, default=0.05, dest="alpha_tilde")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_critical_value)

    p = subs.add_parser("coverage-curve", help="coverage curve for one interval kind")
    _add_common_design_flags(p)
    p.add_argument("--kind", choices=list(_KIND_FLAGS), default="fgls")
    p.add_argument("--method", choices=[m.value for m in McMethod],
                   default=McMethod.CONTROL_VARIATE.value)
    p.add_argument("--grid", default="0:0.98:0.07", help="psi grid start:stop:step")
    p.add_argument("--alpha-tilde", type=float, default=0.05, dest="alpha_tilde")
    _add_sim_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=_cmd_coverage_curve)

    p = subs.add_parser("compare", help="FGLS vs two-stage curves, shared streams")
    _add_common_design_flags(p)
    p.add_argument("--method", choices=[m.value for m in McMethod],
                   default=McMethod.CONTROL_VARIATE.value)
    p.add_argument("--grid", default="0:0.98:0.07")
    p.add_argument("--alpha-tilde", type=float, default=0.05, dest="alpha_tilde")
    p.add_argument(
        "--independent-streams",
        action="store_true",
        help="use seed and seed+1 for the two kinds instead of shared draws",
    )
    _add_sim_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_compare)

    p = subs.add_parser("efficiency", help="brute force vs control variate at one psi")
    _add_common_design_flags(p)
    p.add_argument("--kind", choices=["fgls", "two-stage"], default="fgls")
    p.add_argument("--psi", type=float, default=0.49)
    p.add_argument("--alpha-tilde", type=float, default=0.05, dest="alpha_tilde")
    _add_sim_flags(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_efficiency)

    p = subs.add_parser("self-check", help="run correctness oracles and invariants")
    p.add_argument("--x", default=None, help="optional design matrix CSV")
    p.add_argument("--a", default=None, help="contrast for --x")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--header", action="store_true")
    p.add_argument("--psi", type=float, default=0.5, help="true psi for the oracle run")
    p.add_argument("--runs", type=int, default=4000)
    p.add_argument("--seed", type=int, default=20250809)
    p.add_argument(
        "--estimator",
        choices=[k.value for k in PsiEstimatorKind],
        default=PsiEstimatorKind.REML.value,
    )
    p.set_defaults(func=_cmd_self_check)

    return parser


def run_subcommand(argv: list[str] | None = None) -> int:
    """Dispatch a command line; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # argparse --help / usage errors
        return int(exc.code or 0)
    except CsvParseError as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RankDeficientDesignError, IllConditionedDesignError) as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_RANK
    except QuadratureError as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DimensionMismatchError, DomainError) as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except OSError as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_IO
    except PretestCIError as exc:
        print(f"pretestci: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run_subcommand(sys.argv[1:]))


if __name__ == "__main__":
    main()
