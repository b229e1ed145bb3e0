"""Simple graphs: parsing, connected components, adjacency, irreducibility.

Nodes are 1-based externally (matrix row i holds node i+1 internally).  The
edge-list text format is: first non-comment line ``n``, then one ``i j`` pair
per line with ``1 <= i < j <= n``; ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FormatError
from .tolerances import DEFAULT_TOL, Tolerances

__all__ = [
    "Graph",
    "parse_graph",
    "ComponentSplit",
    "components",
    "adjacency",
    "apply_permutation",
    "is_irreducible",
    "is_irreducible_power_oracle",
]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges."""

    node_count: int
    edges: frozenset = field(default_factory=frozenset)  # of (i, j) with i < j, 1-based

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be nonnegative")
        for i, j in self.edges:
            if not (1 <= i < j <= self.node_count):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.node_count}")

    @classmethod
    def from_edges(cls, node_count: int, edges) -> "Graph":
        return cls(node_count=node_count, edges=frozenset(tuple(sorted(e)) for e in edges))

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format; malformed input raises FormatError with a line number."""
    n = None
    edges: dict[tuple, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise FormatError(f"expected node count, got {line!r}", lineno) from None
            if n < 0:
                raise FormatError(f"node count must be nonnegative, got {n}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected 'i j', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError(f"node indices must be integers, got {line!r}", lineno) from None
        if i == j:
            raise FormatError(f"self-loop {i} {j}", lineno)
        if i > j:
            raise FormatError(f"expected i < j, got {i} {j}", lineno)
        if not (1 <= i and j <= n):
            raise FormatError(f"node index out of range 1..{n}: {i} {j}", lineno)
        if (i, j) in edges:
            raise FormatError(f"duplicate edge {i} {j} (first at line {edges[(i, j)]})", lineno)
        edges[(i, j)] = lineno
    if n is None:
        raise FormatError("empty input: no node count found")
    return Graph(node_count=n, edges=frozenset(edges))


@dataclass(frozen=True)
class ComponentSplit:
    """Connected components plus the canonical block permutation.

    `components` partition 1..n, each sorted ascending, ordered by smallest
    member.  `permutation` lists original node labels in the permuted order:
    nontrivial components first (each contiguous), isolated nodes last.
    """

    components: tuple
    nontrivial_count: int
    isolated: tuple
    permutation: tuple

    @property
    def nontrivial(self) -> tuple:
        return tuple(c for c in self.components if len(c) >= 2)


def components(G: Graph) -> ComponentSplit:
    """Split `G` into connected components by traversal.

    Deterministic: components are discovered from the smallest unvisited
    node, members are ascending, isolated nodes trail in ascending order.
    """
    n = G.node_count
    neighbors: list[list[int]] = [[] for _ in range(n + 1)]
    for i, j in G.edges:
        neighbors[i].append(j)
        neighbors[j].append(i)
    seen = [False] * (n + 1)
    comps: list[tuple] = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(tuple(sorted(comp)))
    nontrivial = [c for c in comps if len(c) >= 2]
    isolated = [c[0] for c in comps if len(c) == 1]
    order: list[int] = []
    for c in nontrivial:
        order.extend(c)
    order.extend(isolated)
    return ComponentSplit(
        components=tuple(comps),
        nontrivial_count=len(nontrivial),
        isolated=tuple(isolated),
        permutation=tuple(order),
    )


def adjacency(G: Graph) -> np.ndarray:
    """0/1 symmetric adjacency matrix with zero diagonal."""
    A = np.zeros((G.node_count, G.node_count))
    for i, j in G.edges:
        A[i - 1, j - 1] = 1.0
        A[j - 1, i - 1] = 1.0
    return A


def apply_permutation(M: np.ndarray, order) -> np.ndarray:
    """Reorder rows and columns so new position p holds original node order[p] (1-based)."""
    ix = np.asarray(order, dtype=int) - 1
    return np.asarray(M)[np.ix_(ix, ix)]


def _support_adjacency(M: np.ndarray, tol: Tolerances) -> np.ndarray:
    S = np.abs(np.asarray(M, dtype=float)) > tol.support
    np.fill_diagonal(S, False)
    return S


def is_irreducible(M, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Irreducibility of a nonnegative symmetric matrix, by support-graph traversal.

    Equivalent to the (I + A)^(n-1) > 0 criterion (see the power oracle); an
    order-1 matrix is irreducible iff it is nonzero.  Entries with magnitude
    <= tol.support are structural zeros.

    Raises
    ------
    ValueError
        If any entry of `M` is negative.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.size and float(M.min()) < 0.0:
        raise ValueError(f"is_irreducible requires nonnegative entries, found {M.min():g}")
    n = M.shape[0]
    if n == 0:
        return False
    if n == 1:
        return float(M[0, 0]) > tol.support
    S = _support_adjacency(M, tol)
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for v in np.flatnonzero(S[u]):
            if not seen[v]:
                seen[v] = True
                stack.append(int(v))
    return bool(seen.all())


def is_irreducible_power_oracle(M, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Slow reference: (I + A)^(n-1) entrywise positive on the support pattern.

    Kept independent of the traversal implementation for cross-checking;
    uses clipped 0/1 powers so it cannot overflow at any order.
    """
    M = np.asarray(M, dtype=float)
    if M.size and float(M.min()) < 0.0:
        raise ValueError("oracle requires nonnegative entries")
    n = M.shape[0]
    if n == 0:
        return False
    if n == 1:
        return float(M[0, 0]) > tol.support
    S = _support_adjacency(M, tol).astype(float)
    B = np.eye(n) + S
    P = np.eye(n)
    for _ in range(n - 1):
        P = np.minimum(P @ B, 1.0)
    return bool(np.all(P > 0))
