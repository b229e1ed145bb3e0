"""
The n = r + 2 barrier for spreading points on a sphere
======================================================

r + 2 points on the unit sphere in R^r cannot all stay at squared
distance >= 2 from each other; some pair always falls to 2 or below.
Sampling never finds a counterexample, and the margin by which the best
random configuration misses the bound shrinks with r.
"""

import numpy as np

from edmsphere import gen_random_spherical, rankin_codimension2_check

rng = np.random.default_rng(7)

for r in (2, 3, 5, 8):
    n = r + 2
    best = -np.inf
    for _ in range(2000):
        X = rng.standard_normal((n, r))
        X /= np.linalg.norm(X, axis=1)[:, None]
        G = X @ X.T
        D = 2.0 - 2.0 * G
        np.fill_diagonal(D, np.inf)
        best = max(best, float(D.min()))
    print(f"r = {r}: best min squared distance over 2000 trials = {best:.6f}  (bound 2)")

# the certified route: generate, validate, check, with the closest pair
# reported as a witness
edm, _ = gen_random_spherical(6, 4, seed=123)
rpt = rankin_codimension2_check(edm)
print("\ncertified check at n = 6, r = 4:", "ok" if rpt.ok else "violated")
print(rpt.message)
