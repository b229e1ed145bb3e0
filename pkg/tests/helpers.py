"""Shared oracles for the test suite.

Everything here is deliberately written against plain numpy, not against the
package under test, so expected values come from an independent route.
"""

from __future__ import annotations

import numpy as np


def edm_from_points(X: np.ndarray) -> np.ndarray:
    """Squared pairwise distances by direct per-pair measurement."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            diff = X[i] - X[j]
            D[i, j] = float(diff @ diff)
    return D


def centered_gram_oracle(D: np.ndarray) -> np.ndarray:
    """Double centering at the centroid, straight from the formula."""
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    J = np.eye(n) - np.ones((n, n)) / n
    B = -0.5 * J @ D @ J
    return (B + B.T) / 2.0


def rank_oracle(M: np.ndarray, cut: float = 1e-8) -> int:
    vals = np.linalg.eigvalsh((np.asarray(M) + np.asarray(M).T) / 2.0)
    s = max(1.0, float(np.max(np.abs(M)))) if np.asarray(M).size else 1.0
    return int(np.count_nonzero(np.abs(vals) > cut * s))


def compose_block_edm(orders, singletons: int = 0) -> np.ndarray:
    """Unit spherical EDM made of unit-circumradius simplex blocks.

    Block i holds orders[i] >= 2 points at squared distance
    2 * n_i / (n_i - 1) from each other; points in different blocks (and the
    trailing `singletons` lone points) sit at squared distance exactly 2.
    """
    sizes = list(orders) + [1] * singletons
    n = sum(sizes)
    D = 2.0 * (np.ones((n, n)) - np.eye(n))
    pos = 0
    for size in sizes:
        if size >= 2:
            gamma = 2.0 * size / (size - 1.0)
            blk = gamma * (np.ones((size, size)) - np.eye(size))
            D[pos:pos + size, pos:pos + size] = blk
        pos += size
    return D


def random_sphere_points(rng: np.random.Generator, n: int, r: int) -> np.ndarray:
    X = rng.standard_normal((n, r))
    X /= np.linalg.norm(X, axis=1)[:, None]
    return X


def permute_1based(M: np.ndarray, order) -> np.ndarray:
    """Rows/cols reordered so new position p holds original index order[p] (1-based)."""
    ix = np.asarray(order, dtype=int) - 1
    return np.asarray(M)[np.ix_(ix, ix)]


def random_graph_edges(rng: np.random.Generator, n: int, p: float):
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < p:
                edges.append((i, j))
    return edges
