"""Compare the three estimators of the AR(1) autocorrelation psi.

First a single draw: we plot (textually) the profiled ML and REML criteria
over the search grid and mark their maximizers next to the sample
autocorrelation of the OLS residuals. Then 500 replications summarize each
estimator's sampling distribution at a true psi of 0.5.
"""

import numpy as np

from pretestci import (
    PsiEstimatorKind,
    criterion_profile,
    estimate_psi_many,
    fixture_problem,
    simulate_edagger,
    simulate_edagger_many,
)

problem = fixture_problem(n=20)
true_psi = 0.5
rng = np.random.default_rng(3)

e = simulate_edagger(true_psi, problem.n, rng)
print(f"single draw at true psi = {true_psi}\n")
for kind in (PsiEstimatorKind.ML, PsiEstimatorKind.REML):
    profile = criterion_profile(kind, e, problem)
    lo = profile.values.min()
    print(f"{kind.value.upper()} criterion over psi (argmax {profile.argmax:.4f}):")
    for j in range(0, profile.grid.size, 16):
        bar = "#" * int(1 + 40 * (profile.values[j] - lo) / (profile.max_value - lo + 1e-12))
        print(f"  psi={profile.grid[j]:.3f} {bar}")
    print()

draws = simulate_edagger_many(true_psi, problem.n, 500, rng).T
print(f"500 replications at true psi = {true_psi}:")
print(f"{'estimator':<12} {'mean':>7} {'median':>7} {'sd':>7} {'P(hat=0)':>9}")
for kind in PsiEstimatorKind:
    psis = estimate_psi_many(kind, draws, problem)
    print(
        f"{kind.value:<12} {psis.mean():>7.3f} {np.median(psis):>7.3f} "
        f"{psis.std():>7.3f} {np.mean(psis == 0.0):>9.3f}"
    )
print(
    "\nThe sample autocorrelation is biased toward 0 (it is clamped there for"
    "\ninterval construction); REML corrects most of the downward bias, which"
    "\nis why the FGLS interval uses it by default."
)
