"""
Orthogonal simplex blocks inside spread-out spherical configurations
====================================================================

Unit-sphere point sets with every squared distance >= 2 decompose: when
2 <= n - r <= r, some permutation splits the points into n - r simplices
spanning mutually orthogonal subspaces.  At the extreme n = 2r nothing
but the regular crosspolytope survives.
"""

import numpy as np

from edmsphere import (
    crosspolytope_recognize,
    gen_crosspolytope,
    kuperberg_decompose,
    require_edm,
)

np.set_printoptions(precision=4, suppress=True)
rng = np.random.default_rng(20240817)

# build a configuration from two regular simplex blocks (orders 3 and 4)
# in orthogonal subspaces; cross-block squared distances are exactly 2
sizes = [3, 4]
n = sum(sizes)
D = 2.0 * (np.ones((n, n)) - np.eye(n))
pos = 0
for size in sizes:
    gamma = 2.0 * size / (size - 1.0)
    D[pos:pos + size, pos:pos + size] = gamma * (np.ones((size, size)) - np.eye(size))
    pos += size

# hide the block structure behind a random relabeling
order = rng.permutation(n) + 1
shuffled = D[np.ix_(order - 1, order - 1)]
print("shuffled matrix (block structure not visible):")
print(shuffled)

dec = kuperberg_decompose(require_edm(shuffled))
print("\nrecovered blocks (original labels of the shuffled matrix):")
for blk in dec.blocks:
    print("  nodes", blk.indices, " order", blk.order, " subspace dim", blk.dim,
          " origin", blk.certificate.origin_position)
print("cross-block deviation from 2:", dec.cross_check)
print("cross-block inner products:", dec.cross_gram_max)
print("subspace dimensions", dec.subspace_dims, "sum to r =", dec.r)

# n = 2r: shuffle a crosspolytope and let recognition undo the damage
r = 3
cp = gen_crosspolytope(r)
order = rng.permutation(2 * r) + 1
shuffled = cp.dist2[np.ix_(order - 1, order - 1)]
rec = crosspolytope_recognize(require_edm(shuffled))
print("\ncrosspolytope recognized:", rec.ok)
print("restoring permutation:", rec.permutation)
restored = shuffled[np.ix_(np.array(rec.permutation) - 1, np.array(rec.permutation) - 1)]
print("restored equals the canonical form:", bool(np.array_equal(restored, cp.dist2)))

# a generic unit-sphere sample is declined, not forced into the mold
pts = rng.standard_normal((6, 3))
pts /= np.linalg.norm(pts, axis=1)[:, None]
G = pts @ pts.T
Dr = np.maximum(2.0 - 2.0 * G, 0.0)
np.fill_diagonal(Dr, 0.0)
res = crosspolytope_recognize(require_edm((Dr + Dr.T) / 2))
print("\nrandom 6-point sample recognized?", res.ok, "-", res.reason)
