"""Robustness monitoring on a single trace.

Robustness is a signed margin: positive means the formula holds with room to
spare, negative means it fails by that much, and exactly zero counts as a
violation.
"""
import numpy as np

from stlmine import Trace, parse_formula, robustness, satisfies

# a decaying oscillation sampled every 0.1 s for 10 s
t = np.arange(0.0, 10.05, 0.1)
trace = Trace({"x": 5.0 * np.exp(-0.3 * t) * np.cos(2.0 * t)}, period=0.1)

for text in [
    "x > -6",                  # stays above -6 at time zero
    "G[0,10](x > -6)",         # ... and at every sample
    "G[0,10](x > -1)",         # too tight: the first trough breaks it
    "F[0,3](x < -2)",          # the trough arrives within 3 s
    "G[2,10](x < 3 and x > -3)",  # settles into a band after 2 s
    "F[0,10](G[0,2](x < 0.5))",   # eventually stays small for 2 s straight
]:
    phi = parse_formula(text)
    rho = robustness(phi, trace)
    verdict = "SAT  " if satisfies(phi, trace) else "UNSAT"
    print(f"{verdict} rho={rho:+8.4f}  {text}")

# windows reaching past the end of the trace are truncated, not rejected
print()
print("robustness of G[0,500](x > -6):", robustness(parse_formula("G[0,500](x > -6)"), trace))

# evaluation can start anywhere on the timeline, not just at zero
phi = parse_formula("x > 0")
for t0 in (0.0, 1.6, 3.1):
    print(f"x > 0 at t={t0}: rho={robustness(phi, trace, t0):+.4f}")
