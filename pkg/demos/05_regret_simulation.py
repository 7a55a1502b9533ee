"""Regret of the monotone classifier shrinks with the sample size.

Runs the seeded step-design simulation (known optimum, exact population
risks) for both estimators and prints the regret curves.  With the step
design the population regret of a fitted 1-d classifier is 0.5 * |a - 0.5|
where a is its decision threshold, so no Monte Carlo integration error
enters the curve.
"""

from isoclass import simulate_regret

NS = (100, 400, 1600)
REPS = 100
SEED = 7

for estimator in ("monotone", "bernstein"):
    curve = simulate_regret("step", NS, reps=REPS, seed=SEED, estimator=estimator)
    print(f"{estimator} estimator ({REPS} replications per n, seed {SEED}):")
    for n, mean, se in zip(curve.sample_sizes, curve.mean_regret, curve.std_error):
        print(f"  n={n:>5}: mean regret {mean:.5f} (se {se:.5f})")
    ratio = curve.mean_regret[-1] / curve.mean_regret[0]
    print(f"  regret ratio n={NS[-1]} vs n={NS[0]}: {ratio:.3f}")
    print()
