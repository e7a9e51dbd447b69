import numpy as np
import pytest

import pretestci.mc as mc
from pretestci import (
    CoverageEstimate,
    DomainError,
    IntervalKind,
    McMethod,
    PretestFamily,
    PsiEstimatorKind,
    SimConfig,
    build_pretest,
    coverage_bruteforce,
    coverage_curve,
    coverage_curves,
    coverage_cv_fgls,
    coverage_cv_twostage,
    fixture_problem,
    ones_problem,
    oracle_check,
    relative_efficiency,
    residual_spectrum,
)


@pytest.fixture(scope="module")
def problem():
    return fixture_problem(n=20)


@pytest.fixture(scope="module")
def pretest(problem):
    return build_pretest(problem, PretestFamily.DURBIN_WATSON, 0.05)


def make_cfg(problem, pretest=None, **kw):
    kw.setdefault("seed", 20250101)
    kw.setdefault("runs", 20_000)
    kw.setdefault("psi_grid", (0.0, 0.49))
    return SimConfig(pretest=pretest, **kw)


class TestBruteForce:
    def test_known_psi_pivot_exactness(self, problem):
        # the interval at the true psi is an exact pivot on every fixture design
        cfg = make_cfg(problem, runs=100_000)
        for prob in (problem, ones_problem(n=20)):
            for psi in (0.0, 0.5, 0.9):
                est = coverage_bruteforce(IntervalKind.KNOWN_PSI, psi, prob, cfg)
                assert abs(est.estimate - 0.95) < 3 * est.stderr
                assert est.stderr <= 0.5 / np.sqrt(cfg.runs)

    def test_ols_exact_at_zero(self, problem):
        cfg = make_cfg(problem, runs=40_000)
        est = coverage_bruteforce(IntervalKind.OLS, 0.0, problem, cfg)
        assert abs(est.estimate - 0.95) < 3 * est.stderr

    def test_deterministic(self, problem):
        cfg = make_cfg(problem, runs=5_000)
        a = coverage_bruteforce(IntervalKind.FGLS, 0.3, problem, cfg)
        b = coverage_bruteforce(IntervalKind.FGLS, 0.3, problem, cfg)
        assert a.estimate == b.estimate and a.stderr == b.stderr

    def test_two_stage_needs_pretest(self, problem):
        cfg = make_cfg(problem)
        with pytest.raises(DomainError):
            coverage_bruteforce(IntervalKind.TWO_STAGE, 0.3, problem, cfg)


class TestControlVariates:
    def test_stubbed_estimator_gives_exact_nominal(self, problem, monkeypatch):
        psi = 0.4
        monkeypatch.setattr(
            mc,
            "estimate_psi_many",
            lambda kind, rows, prob, cache=None: np.full(rows.shape[0], psi),
        )
        cfg = make_cfg(problem, runs=5_000)
        est = coverage_cv_fgls(psi, problem, cfg)
        assert est.estimate == 0.95
        assert est.stderr == 0.0

    def test_two_stage_always_reject_with_stub(self, problem, monkeypatch):
        # a cutoff above 4 rejects every draw, collapsing K to the FGLS interval
        psi = 0.4
        monkeypatch.setattr(
            mc,
            "estimate_psi_many",
            lambda kind, rows, prob, cache=None: np.full(rows.shape[0], psi),
        )
        always_reject = mc.PretestSpec(
            family=PretestFamily.DURBIN_WATSON,
            alpha_tilde=0.9999,
            critical_value=4.5,
            spectrum=residual_spectrum(problem),
        )
        cfg = make_cfg(problem, pretest=always_reject, runs=5_000)
        est = coverage_cv_twostage(psi, problem, cfg)
        assert est.estimate == 0.95
        assert est.stderr == 0.0

    @pytest.mark.parametrize("psi", [0.0, 0.49, 0.7])
    def test_agrees_with_bruteforce_independent_seeds(self, problem, pretest, psi):
        cfg_cv = make_cfg(problem, pretest=pretest, seed=101, runs=20_000)
        cfg_bf = make_cfg(problem, pretest=pretest, seed=909, runs=20_000)
        for cv_fn, kind in (
            (coverage_cv_fgls, IntervalKind.FGLS),
            (coverage_cv_twostage, IntervalKind.TWO_STAGE),
        ):
            cv = cv_fn(psi, problem, cfg_cv)
            bf = coverage_bruteforce(kind, psi, problem, cfg_bf)
            gap = abs(cv.estimate - bf.estimate)
            assert gap < 3 * np.hypot(cv.stderr, bf.stderr)

    def test_variance_reduction_at_half(self, problem, pretest):
        cfg = make_cfg(problem, pretest=pretest, runs=20_000)
        cv = coverage_cv_fgls(0.49, problem, cfg)
        bf = coverage_bruteforce(IntervalKind.FGLS, 0.49, problem, cfg)
        assert (bf.stderr / cv.stderr) ** 2 >= 1.2


class TestCurves:
    def test_singleton_grid_matches_single_call(self, problem):
        cfg = make_cfg(problem, psi_grid=(0.0,), runs=4_000, method=McMethod.BRUTE_FORCE)
        curve = coverage_curve(IntervalKind.OLS, problem, cfg)
        single = coverage_bruteforce(IntervalKind.OLS, 0.0, problem, cfg)
        assert len(curve) == 1
        assert curve[0].estimate == single.estimate
        assert curve[0].stderr == single.stderr

    def test_bit_identical_reruns(self, problem, pretest):
        cfg = make_cfg(
            problem, pretest=pretest, psi_grid=(0.0, 0.49), runs=4_000
        )
        run1 = coverage_curves((IntervalKind.FGLS, IntervalKind.TWO_STAGE), problem, cfg)
        run2 = coverage_curves((IntervalKind.FGLS, IntervalKind.TWO_STAGE), problem, cfg)
        for kind in run1:
            for a, b in zip(run1[kind], run2[kind]):
                assert a.estimate == b.estimate and a.stderr == b.stderr

    def test_threaded_equals_serial(self, problem, pretest, monkeypatch):
        cfg = make_cfg(problem, pretest=pretest, psi_grid=(0.0, 0.3, 0.6), runs=2_000)
        serial = coverage_curve(IntervalKind.FGLS, problem, cfg)
        monkeypatch.setenv(mc.THREADS_ENV, "3")
        threaded = coverage_curve(IntervalKind.FGLS, problem, cfg)
        for a, b in zip(serial, threaded):
            assert a.estimate == b.estimate and a.stderr == b.stderr

    def test_common_random_numbers_pair_the_kinds(self, problem, pretest):
        # with shared draws the FGLS/two-stage difference has smaller variance
        # than independent streams would give
        cfg = make_cfg(problem, pretest=pretest, runs=8_000)
        ws = mc._Workspace(problem, cfg)
        _, arrays = mc._run_cell(
            problem, 0.49, cfg, (IntervalKind.FGLS, IntervalKind.TWO_STAGE), ws,
            collect=True,
        )
        h_f = arrays[IntervalKind.FGLS].astype(float)
        h_t = arrays[IntervalKind.TWO_STAGE].astype(float)
        paired = np.var(h_f - h_t)
        unpaired = np.var(h_f) + np.var(h_t)
        assert paired < unpaired

    def test_grid_validation(self, problem):
        with pytest.raises(DomainError):
            SimConfig(seed=1, psi_grid=(0.0, 1.0))
        with pytest.raises(DomainError):
            SimConfig(seed=1, runs=1)


class TestRelativeEfficiency:
    def _estimate(self, stderr, wall, kind=IntervalKind.FGLS, psi=0.5):
        return CoverageEstimate(
            psi=psi,
            interval_kind=kind,
            estimate=0.95,
            stderr=stderr,
            runs=1000,
            seed=0,
            wall_time=wall,
            method=McMethod.BRUTE_FORCE,
        )

    def test_identical_inputs(self):
        a = self._estimate(0.01, 10.0)
        assert relative_efficiency(a, a) == 1.0

    def test_equal_accuracy_time_ratio(self):
        slow = self._estimate(0.001, 208.0)
        fast = self._estimate(0.001, 82.0)
        assert relative_efficiency(slow, fast) == pytest.approx(208.0 / 82.0)
        assert relative_efficiency(slow, fast) == pytest.approx(2.54, abs=0.01)

    def test_zero_stderr_is_infinite(self):
        a = self._estimate(0.01, 10.0)
        b = self._estimate(0.0, 10.0)
        assert relative_efficiency(a, b) == np.inf

    def test_mismatched_targets_rejected(self):
        a = self._estimate(0.01, 10.0, psi=0.1)
        b = self._estimate(0.01, 10.0, psi=0.2)
        with pytest.raises(DomainError):
            relative_efficiency(a, b)

    def test_measured_gain_on_fixture(self, problem, pretest):
        cfg = make_cfg(problem, pretest=pretest, runs=10_000)
        cv = coverage_cv_fgls(0.49, problem, cfg)
        bf = coverage_bruteforce(IntervalKind.FGLS, 0.49, problem, cfg)
        assert relative_efficiency(bf, cv) > 1.0


class TestOracleCheck:
    def test_passes_on_fixture(self, problem, pretest):
        cfg = make_cfg(problem, pretest=pretest, runs=2_000)
        report = oracle_check(problem, 0.5, cfg)
        assert report.passed
        kinds = {e.kind for e in report.entries}
        assert kinds == {IntervalKind.OLS, IntervalKind.FGLS, IntervalKind.TWO_STAGE}
        for entry in report.entries:
            assert entry.mismatches == 0
            assert entry.first_mismatch is None
            assert entry.estimate_delta == 0.0

    def test_sample_acf_estimator_variant(self, problem, pretest):
        cfg = make_cfg(
            problem,
            pretest=pretest,
            runs=2_000,
            estimator=PsiEstimatorKind.SAMPLE_ACF,
        )
        report = oracle_check(problem, 0.3, cfg)
        assert report.passed

    def test_parametrization_labels(self, problem, pretest):
        cfg = make_cfg(problem, pretest=pretest, runs=1_000)
        report = oracle_check(problem, 0.0, cfg, beta=np.array([1.0, 2.0, -1.0]))
        labels = {e.label for e in report.entries}
        assert labels == {"beta=0, sigma2=1", "beta=fixture, sigma2=7"}
