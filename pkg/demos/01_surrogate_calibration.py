"""Which surrogate losses preserve the risk ordering under misspecification?

Walks the three-point monotone classification example: tabulates the
classification and surrogate risks of every monotone prediction set, and
shows that the hinge loss picks the same set as the 0-1 loss while the
exponential and truncated quadratic losses pick a different (worse) one.
"""

from fractions import Fraction

from isoclass import (
    calibration_table,
    delta_c,
    exponential,
    hinge,
    truncated_quadratic,
    zero_one,
)
from isoclass.bench import example_distribution_1

dist = example_distribution_1()
print("support:", [p[0] for p in dist.points])
print("eta:    ", [str(e) for e in dist.eta])
print()

print("conditional-risk gaps DeltaC(eta) per loss:")
for loss in (zero_one(), hinge(1), exponential(), truncated_quadratic()):
    gaps = [delta_c(loss, e) for e in dist.eta]
    print(f"  {loss.name:<8}", ["%+.4f" % float(g) for g in gaps])
print("(the hinge gaps are exactly proportional to the 0-1 gaps; the others are not)")
print()

report = calibration_table(dist, [zero_one(), hinge(1), exponential(), truncated_quadratic()])
header = f"{'set':<10}" + "".join(f"{name:>12}" for name in report.surrogate)
print(header)
for i, indices in enumerate(report.sets):
    label = "{" + ",".join(str(dist.points[j][0]) for j in indices) + "}"
    row = f"{label:<10}"
    for name in report.surrogate:
        row += f"{float(report.surrogate[name][i]):>12.4f}"
    print(row)
print()

for (a, b), verdict in report.agreements.items():
    if verdict.agree:
        print(f"{a} vs {b}: risk orderings agree on every pair of sets")
    else:
        wa, wb = verdict.witness
        sa = "{" + ",".join(str(dist.points[j][0]) for j in wa) + "}"
        sb = "{" + ",".join(str(dist.points[j][0]) for j in wb) + "}"
        print(f"{a} vs {b}: orderings DISAGREE, e.g. on {sa} vs {sb}")

print()
best = min(range(len(report.sets)), key=lambda i: report.classification[i])
print(
    "constrained optimum:",
    "{" + ",".join(str(dist.points[j][0]) for j in report.sets[best]) + "}",
    "with classification risk",
    Fraction(report.classification[best]),
)
