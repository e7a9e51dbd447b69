"""Build the three competing confidence intervals for one observed response.

We simulate a response from a trend + noise design with AR(1) errors at
psi = 0.6, then construct the OLS interval, the feasible-GLS interval (REML
estimate of psi plugged into the GLS formula) and the two-stage interval that
lets a Durbin-Watson pretest choose between them.
"""

import numpy as np

from pretestci import (
    PretestFamily,
    PsiEstimatorKind,
    build_pretest,
    confidence_interval,
    dw_statistic,
    estimate_psi,
    fixture_problem,
    ols_residuals,
    simulate_edagger,
)

problem = fixture_problem(n=20)
beta = np.array([2.0, 0.3, 1.5])
theta = float(problem.a @ beta)

rng = np.random.default_rng(1)
errors = simulate_edagger(0.6, problem.n, rng)
y = problem.x @ beta + 1.2 * errors

print(f"design: n={problem.n}, p={problem.p}; true theta = {theta}")
print(f"true psi = 0.6, error scale sigma = 1.2\n")

# OLS pretends the errors are independent
ols = confidence_interval(y, 0.0, problem)

# FGLS estimates psi first (REML is the recommended default)
psi_hat = estimate_psi(PsiEstimatorKind.REML, y, problem)
fgls = confidence_interval(y, psi_hat, problem)

# the two-stage rule: keep OLS unless the Durbin-Watson test sees autocorrelation
pretest = build_pretest(problem, PretestFamily.DURBIN_WATSON, alpha_tilde=0.05)
d = dw_statistic(ols_residuals(problem, y))
rejected = pretest.rejects(d)
two_stage = fgls if rejected else ols

print(f"REML estimate of psi:       {psi_hat:.4f}")
print(f"Durbin-Watson statistic:    {d:.4f} (cutoff {pretest.critical_value:.4f}, "
      f"{'reject independence' if rejected else 'accept independence'})\n")

rows = [("OLS", ols), ("FGLS(REML)", fgls), ("two-stage", two_stage)]
print(f"{'interval':<12} {'lower':>9} {'upper':>9} {'width':>8} {'covers theta':>13}")
for name, iv in rows:
    print(
        f"{name:<12} {iv.lower:>9.4f} {iv.upper:>9.4f} {2 * iv.half_width:>8.4f} "
        f"{str(iv.contains(theta)):>13}"
    )

print(
    "\nThe FGLS interval is wider than OLS here because it pays for estimating"
    "\npsi; the coverage-curve demo shows why that price is usually worth it."
)
