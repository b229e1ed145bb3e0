"""
Minimum-dimension orthonormal representations of graphs
=======================================================

Every graph on n nodes with k nontrivial connected components has unit
vectors for its nodes, adjacent pairs at strictly negative inner product
and non-adjacent pairs orthogonal, in dimension exactly n - k.  The
construction runs through a unit spherical EDM built from the component
adjacency spectra.
"""

import numpy as np

from edmsphere import (
    Graph,
    construct_orthorep,
    minimality_bound,
    verify_sign_pattern,
)

np.set_printoptions(precision=4, suppress=True)

# five nodes, edges {1,2} and {3,4}; node 5 is isolated, so k = 2
G = Graph.from_edges(5, [(1, 2), (3, 4)])
rep = construct_orthorep(G)

print("n =", rep.n, " k =", rep.k, " dimension d =", rep.d)
print("\nsquared distance matrix of the representing points:")
print(rep.edm.dist2)
# edges land at squared distance 4 (antipodal), non-edges at exactly 2

print("\ncircumcenter weights w (note the isolated node gets 0):")
print(rep.w)

print("\npoints, one row per node:")
print(rep.points)

gram = rep.points @ rep.points.T
print("\nGram matrix (edges -1, non-edges 0):")
print(gram)

check = verify_sign_pattern(rep.edm, G)
print("\nsign pattern verified:", check.ok)

# d = n - k is also minimal: the bound counts, block by block, the
# multiplicity of the top eigenvalue of the normalized adjacencies
bound = minimality_bound(rep)
print("minimality: m =", bound.m, "of k =", bound.k, "-> tight:", bound.tight)

# a connected graph for contrast: the 4-cycle needs dimension 3
cycle = Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
rep4 = construct_orthorep(cycle)
print("\n4-cycle: d =", rep4.d)
print(rep4.edm.dist2)
