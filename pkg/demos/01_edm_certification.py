"""
Certifying Euclidean distance matrices and their spheres
========================================================

A matrix of squared pairwise distances is an EDM exactly when its
double-centered Gram matrix is positive semidefinite.  This script walks
through acceptance, rejection, and the circumradius certificate.
"""

import numpy as np

from edmsphere import (
    gen_regular_simplex,
    spherical_certificate,
    validate_edm,
)

np.set_printoptions(precision=4, suppress=True)

# measure four points in the plane
X = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
n = X.shape[0]
D = np.zeros((n, n))
for i in range(n):
    for j in range(n):
        D[i, j] = np.sum((X[i] - X[j]) ** 2)

print("squared distances of the unit square:")
print(D)

res = validate_edm(D)
print("accepted as an EDM, embedding dimension", res.embedding_dim)

# the certificate solves D w = e; e^T w > 0 means the points share a sphere
cert = spherical_certificate(res)
print("status:", cert.status)
print("circumradius:", cert.radius)          # sqrt(2)/2 for the unit square
print("unit sphere?", cert.unit_spherical)

# tamper with one entry and the PSD test produces a witness direction
bad = D.copy()
bad[0, 2] = bad[2, 0] = 9.0
rej = validate_edm(bad)
print("\ntampered matrix rejected:", rej.reason)
print("most negative Gram eigenvalue:", rej.witness_eigenvalue)

# a classical identity: gamma*(E - I) comes from a regular simplex with
# circumradius sqrt(gamma*(n-1)/(2n)).  Sweep gamma and watch the radius.
print("\nregular simplex radii, n = 4:")
for gamma in (1.0, 2.0, 8.0 / 3.0, 4.0):
    c = spherical_certificate(gen_regular_simplex(4, gamma))
    print(f"  gamma = {gamma:.4f}  radius = {c.radius:.6f}  unit = {c.unit_spherical}")
# gamma = 2n/(n-1) = 8/3 is the one value that lands on the unit sphere
