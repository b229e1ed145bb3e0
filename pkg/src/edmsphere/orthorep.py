"""Minimum-dimension orthonormal representations of graphs.

An orthonormal representation assigns each node of a graph G a unit vector
so that adjacent nodes get vectors at negative inner product and
non-adjacent nodes get orthogonal ones.  With k the number of connected
components of G holding at least one edge, the minimum dimension is n - k,
achieved by the spectral construction below: normalize the adjacency block
of each such component by its top eigenvalue, assemble the blocks into
Delta, and read the points off a factorization of B = I - Delta.  The
companion squared-distance matrix D = 2(E - I) + 2 Delta is unit spherical
with circumcenter weight vector built from the per-block Perron vectors,
and the multiplicity of lambda_max(Delta) certifies that no smaller
dimension is possible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edm import Edm, EdmRejection, require_edm, validate_edm
from .errors import ConsistencyError
from .graphs import ComponentSplit, Graph, adjacency, components
from .spectral import eig, perron
from .tolerances import DEFAULT_TOL, Tolerances, scale

__all__ = [
    "OrthoRep",
    "construct_orthorep",
    "SignPatternReport",
    "verify_sign_pattern",
    "MinimalityReport",
    "minimality_bound",
]


@dataclass(eq=False)
class OrthoRep:
    """An orthonormal representation with its spectral support data.

    Attributes
    ----------
    graph : Graph
    split : ComponentSplit
        Connected components; k = number of components with an edge.
    k : int
    d : int
        Representation dimension, n - k (n for the edgeless graph).
    points : (n, d) ndarray
        Unit rows; row i represents node i+1.
    edm : Edm
        The companion squared-distance matrix 2(E - I) + 2 Delta.
    w : (n,) ndarray or None
        Circumcenter weight vector with D w = e; None only for n = 1.
    delta : (n, n) ndarray
        Block-normalized adjacency, zero on rows of isolated nodes.
    unit_spherical : bool
        True when 2 e^T w = 1 (always, except for the edgeless graph).
    adjacency_lambda_max : tuple of float
        Top adjacency eigenvalue of each nontrivial component, in split
        order; the normalizers of the Delta blocks.
    note : str or None
    """

    graph: Graph
    split: ComponentSplit
    k: int
    d: int
    points: np.ndarray
    edm: Edm
    w: np.ndarray | None
    delta: np.ndarray
    unit_spherical: bool
    adjacency_lambda_max: tuple
    note: str | None = None

    @property
    def n(self) -> int:
        return self.graph.node_count


def _edgeless_rep(G: Graph, split: ComponentSplit, tol: Tolerances) -> OrthoRep:
    # No edges: the standard basis is optimal and d = n cannot be improved
    # (any two distinct nodes need independent vectors).
    n = G.node_count
    D = 2.0 * (np.ones((n, n)) - np.eye(n))
    edm = require_edm(D, tol)
    # D = 2(E - I) is invertible for n >= 2 with D w = e at w = e / (2(n-1)).
    w = np.full(n, 1.0 / (2.0 * (n - 1))) if n >= 2 else None
    return OrthoRep(
        graph=G, split=split, k=0, d=n,
        points=np.eye(n), edm=edm, w=w,
        delta=np.zeros((n, n)), unit_spherical=False,
        adjacency_lambda_max=(),
        note="graph has no edges; standard basis, dimension n, sphere is not unit",
    )


def construct_orthorep(G: Graph, tol: Tolerances = DEFAULT_TOL) -> OrthoRep:
    """Build a minimum-dimension orthonormal representation of G.

    Per component with at least one edge, the adjacency block is scaled by
    its top eigenvalue so the block of Delta has top eigenvalue exactly 1
    with a positive eigenvector; isolated nodes contribute zero rows.  The
    points are an eigenfactorization of B = I - Delta, of rank n - k.

    Parameters
    ----------
    G : Graph
    tol : Tolerances

    Returns
    -------
    OrthoRep

    Raises
    ------
    ConsistencyError
        If any post-condition fails: D w = e, 2 e^T w = 1, rank(B) = n - k,
        unit rows, or the inner-product sign pattern.  These cannot fail for
        exact arithmetic, so a failure is a numerical diagnostic, reported
        rather than silently returned.
    """
    split = components(G)
    k = split.nontrivial_count
    if k == 0:
        return _edgeless_rep(G, split, tol)
    n = G.node_count
    A = adjacency(G)
    delta = np.zeros((n, n))
    xi = np.zeros(n)
    lams = []
    for comp in split.nontrivial:
        idx = np.asarray(comp, dtype=int) - 1
        Asub = A[np.ix_(idx, idx)]
        pd = perron(Asub, tol)
        if not pd.lambda_max > 0.0:
            raise ConsistencyError(
                f"component {comp} has an edge but adjacency eigenvalue {pd.lambda_max:g}"
            )
        if np.any(pd.xi <= 0.0):
            raise ConsistencyError(
                f"leading eigenvector of connected component {comp} is not positive"
            )
        delta[np.ix_(idx, idx)] = Asub / pd.lambda_max
        xi[idx] = pd.xi
        lams.append(pd.lambda_max)
    w = xi / (2.0 * xi.sum())
    D = 2.0 * (np.ones((n, n)) - np.eye(n)) + 2.0 * delta
    res = validate_edm(D, tol)
    if isinstance(res, EdmRejection):
        raise ConsistencyError(f"constructed matrix rejected as an EDM: {res.reason} ({res.detail})")
    edm = res
    B = np.eye(n) - delta
    es = eig(B, tol)
    keep = es.values > tol.rank * scale(B)
    P = es.vectors[:, keep] * np.sqrt(es.values[keep])
    d = int(np.count_nonzero(keep))
    rep = OrthoRep(
        graph=G, split=split, k=k, d=d, points=P, edm=edm, w=w,
        delta=delta, unit_spherical=True, adjacency_lambda_max=tuple(lams),
    )
    _check_construction(rep, tol)
    return rep


def _check_construction(rep: OrthoRep, tol: Tolerances) -> None:
    """Post-conditions of the spectral construction; ConsistencyError on failure."""
    n = rep.n
    problems = []
    if rep.d != n - rep.k:
        problems.append(f"rank of B is {rep.d}, expected n - k = {n - rep.k}")
    if rep.edm.embedding_dim != n - rep.k:
        problems.append(
            f"embedding dimension of D is {rep.edm.embedding_dim}, expected {n - rep.k}"
        )
    Ddw = rep.edm.dist2 @ rep.w
    solve_res = float(np.max(np.abs(Ddw - 1.0)))
    if solve_res > tol.solve * scale(rep.edm.dist2):
        problems.append(f"max|D w - e| = {solve_res:g}")
    etw = float(rep.w.sum())
    if abs(2.0 * etw - 1.0) > tol.unit:
        problems.append(f"2 e^T w = {2.0 * etw:.17g}, expected 1")
    sign = verify_sign_pattern(rep.edm, rep.graph, tol)
    if not sign.ok:
        problems.append(
            f"sign pattern: {len(sign.edge_violations)} edge and "
            f"{len(sign.nonedge_violations)} non-edge violations"
        )
    gram = rep.points @ rep.points.T
    unit_dev = float(np.max(np.abs(np.diag(gram) - 1.0))) if n else 0.0
    if unit_dev > tol.sign:
        problems.append(f"max | |p_i|^2 - 1 | = {unit_dev:g}")
    if problems:
        raise ConsistencyError("construction self-check failed: " + "; ".join(problems))


@dataclass(eq=False)
class SignPatternReport:
    """Distance-level check of the representation property.

    For unit vectors, d_ij = 2 - 2 p_i . p_j, so an edge (negative inner
    product) reads as d_ij > 2 and a non-edge (orthogonal) as d_ij = 2.
    """

    ok: bool
    edge_violations: tuple
    nonedge_violations: tuple
    min_edge_excess: float
    max_nonedge_dev: float


def verify_sign_pattern(D, G: Graph, tol: Tolerances = DEFAULT_TOL) -> SignPatternReport:
    """Check d_ij > 2 on edges and d_ij = 2 off edges, within tol.sign.

    Parameters
    ----------
    D : Edm or (n, n) array_like
        Squared distances of n unit vectors (circumradius-1 configuration).
    G : Graph
        The pattern to verify against; G.node_count must equal n.
    tol : Tolerances

    Returns
    -------
    SignPatternReport
        Violating pairs are (i, j, d_ij) with 1-based i < j.
        `min_edge_excess` is min over edges of d_ij - 2 (want > tol.sign);
        `max_nonedge_dev` is max over non-edges of |d_ij - 2|.
    """
    M = np.asarray(getattr(D, "dist2", D), dtype=float)
    n = M.shape[0]
    if n != G.node_count:
        raise ValueError(f"matrix order {n} != graph node count {G.node_count}")
    edge_bad = []
    nonedge_bad = []
    min_excess = float("inf")
    max_dev = 0.0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            dij = float(M[i - 1, j - 1])
            if G.has_edge(i, j):
                min_excess = min(min_excess, dij - 2.0)
                if not dij > 2.0 + tol.sign:
                    edge_bad.append((i, j, dij))
            else:
                max_dev = max(max_dev, abs(dij - 2.0))
                if abs(dij - 2.0) > tol.sign:
                    nonedge_bad.append((i, j, dij))
    return SignPatternReport(
        ok=not edge_bad and not nonedge_bad,
        edge_violations=tuple(edge_bad),
        nonedge_violations=tuple(nonedge_bad),
        min_edge_excess=min_excess,
        max_nonedge_dev=max_dev,
    )


@dataclass(eq=False)
class MinimalityReport:
    """Dimension lower bound through the multiplicity of lambda_max(Delta).

    The representation dimension of any unit spherical realization is
    n - multiplicity(lambda_max(Delta)), and the multiplicity cannot exceed
    the number k of Delta's irreducible blocks, so n - k is a floor.  For
    the spectral construction each connected block contributes a simple top
    eigenvalue 1, so m = k and the floor is met.
    """

    m: int
    k: int
    dimension: int
    lambda_global: float
    block_lambda_max: tuple  # top eigenvalue of each normalized Delta block
    bound_ok: bool
    tight: bool


def minimality_bound(rep: OrthoRep, tol: Tolerances | None = None) -> MinimalityReport:
    """Certify d = n - k is minimal by per-block top-eigenvalue multiplicity.

    Runs a Perron analysis on each diagonal block of the representation's
    Delta (normalized component adjacencies, top eigenvalue 1 each) and sums
    the multiplicities at the global maximum.

    Returns
    -------
    MinimalityReport
        `bound_ok` is the theory-side inequality m <= k; `tight` marks the
        constructed case m = k, where dimension n - m equals n - k.
    """
    tol = rep.edm.tol if tol is None else tol
    n = rep.n
    if rep.k == 0:
        return MinimalityReport(
            m=0, k=0, dimension=n, lambda_global=0.0,
            block_lambda_max=(), bound_ok=True, tight=True,
        )
    per_block = []
    for comp in rep.split.nontrivial:
        idx = np.asarray(comp, dtype=int) - 1
        sub = np.maximum(rep.delta[np.ix_(idx, idx)], 0.0)
        per_block.append(perron(sub, tol))
    lam_global = max(pd.lambda_max for pd in per_block)
    m = sum(
        pd.multiplicity for pd in per_block
        if pd.lambda_max >= lam_global - tol.cluster
    )
    return MinimalityReport(
        m=m,
        k=rep.k,
        dimension=n - m,
        lambda_global=lam_global,
        block_lambda_max=tuple(pd.lambda_max for pd in per_block),
        bound_ok=m <= rep.k,
        tight=m == rep.k,
    )
