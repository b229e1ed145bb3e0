"""Structure of unit spherical configurations with min squared distance 2.

Points on the unit sphere pairwise at least sqrt(2) apart are heavily
constrained.  With n points in dimension r:

- if the support of Delta = D/2 + I - E is connected after discarding its
  zero rows, the points are the vertex set of a simplex and the circumcenter
  weights are a padded Perron vector (certify_simplex);
- at n = r + 2 no such configuration exists at all, so some pair must come
  strictly closer than sqrt(2) (rankin_codimension2_check);
- for 2 <= n - r <= r the configuration splits, after a permutation, into
  n - r simplices living in mutually orthogonal subspaces, every
  cross-block squared distance exactly 2 (kuperberg_decompose);
- at n = 2r the split forces antipodal pairs: the configuration is the
  regular crosspolytope (crosspolytope_recognize).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edm import (
    SPHERICAL,
    Edm,
    EdmRejection,
    SphericalCertificate,
    delta_of,
    gen_crosspolytope,
    min_offdiagonal,
    nonnegative_delta,
    spherical_certificate,
    validate_edm,
)
from .errors import ConsistencyError, PreconditionError
from .graphs import Graph, apply_permutation, components, is_irreducible
from .spectral import perron
from .tolerances import Tolerances, scale

__all__ = [
    "SimplexCertificate",
    "certify_simplex",
    "RankinReport",
    "rankin_codimension2_check",
    "DecompositionBlock",
    "Decomposition",
    "kuperberg_decompose",
    "CrosspolytopeResult",
    "crosspolytope_recognize",
]


def _require_unit_spherical(D: Edm, what: str) -> SphericalCertificate:
    cert = spherical_certificate(D)
    if cert.status != SPHERICAL:
        raise PreconditionError(f"{what} requires a spherical EDM, got status {cert.status!r}")
    if not cert.unit_spherical:
        raise PreconditionError(
            f"{what} requires circumradius 1, got radius {cert.radius:.17g}"
        )
    return cert


def _support_split(delta: np.ndarray, tol: Tolerances):
    """Connected components of the support graph of a snapped Delta."""
    n = delta.shape[0]
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if delta[i - 1, j - 1] > tol.support
    ]
    return components(Graph.from_edges(n, edges))


@dataclass(eq=False)
class SimplexCertificate:
    """Is this unit spherical configuration a simplex, and how was it decided?

    method "perron": the support of Delta is connected once zero rows are
    ignored, so the simplex property is forced and w is the padded, scaled
    Perron vector of the core.  method "rank": the support is disconnected
    and only the embedding dimension decides; w is the minimum-norm solve.

    `origin_position` is "interior" when every circumcenter weight exceeds
    tol.sign (the sphere center sits strictly inside the convex hull),
    "boundary" otherwise, None when not a simplex.
    """

    is_simplex: bool
    n: int
    method: str
    lambda_max: float
    w: np.ndarray
    origin_position: str | None
    zero_rows: tuple
    irreducible_core: bool
    residual: float
    detail: str


def certify_simplex(D: Edm, tol: Tolerances | None = None) -> SimplexCertificate:
    """Certify that a unit spherical EDM with min distance sqrt(2) is a simplex.

    Parameters
    ----------
    D : Edm
        Must be unit spherical with every off-diagonal >= 2 - tol.sign.
    tol : Tolerances
        Defaults to the tolerances D was validated with.

    Returns
    -------
    SimplexCertificate

    Raises
    ------
    PreconditionError
        If D is not unit spherical or some squared distance is below 2.
    ConsistencyError
        If the top eigenvalue of Delta strays from 1, the Perron route
        disagrees with the embedding dimension, or the circumcenter weights
        fail D w = e; all impossible in exact arithmetic.
    """
    tol = D.tol if tol is None else tol
    n = D.n
    cert = _require_unit_spherical(D, "certify_simplex")
    dm = delta_of(D)
    delta = nonnegative_delta(dm, tol)  # PreconditionError if min offdiag < 2 - tol.sign
    pd = perron(delta, tol)
    if abs(pd.lambda_max - 1.0) > tol.cluster:
        raise ConsistencyError(
            f"lambda_max(Delta) = {pd.lambda_max:.17g} for a unit spherical input; expected 1"
        )
    zero_mask = np.all(delta <= tol.support, axis=1)
    core_idx = np.flatnonzero(~zero_mask)
    zero_rows = tuple(int(i) + 1 for i in np.flatnonzero(zero_mask))
    core = delta[np.ix_(core_idx, core_idx)]
    irr = core_idx.size > 0 and is_irreducible(core, tol)

    if irr:
        core_pd = perron(core, tol)
        if abs(core_pd.lambda_max - 1.0) > tol.cluster:
            raise ConsistencyError(
                f"core lambda_max = {core_pd.lambda_max:.17g}, expected 1"
            )
        xi = core_pd.xi
        if np.any(xi <= 0.0):
            raise ConsistencyError("Perron vector of the irreducible core is not positive")
        w = np.zeros(n)
        w[core_idx] = xi / (2.0 * xi.sum())
        residual = float(np.max(np.abs(D.dist2 @ w - 1.0)))
        if residual > tol.solve * scale(D.dist2):
            raise ConsistencyError(f"padded Perron weights give max|D w - e| = {residual:g}")
        if D.embedding_dim != n - 1:
            raise ConsistencyError(
                f"connected support forces a simplex, but embedding dimension is "
                f"{D.embedding_dim}, not n - 1 = {n - 1}"
            )
        origin = "interior" if float(w.min()) > tol.sign else "boundary"
        return SimplexCertificate(
            is_simplex=True, n=n, method="perron", lambda_max=core_pd.lambda_max,
            w=w, origin_position=origin, zero_rows=zero_rows, irreducible_core=True,
            residual=residual,
            detail=f"support connected after dropping {len(zero_rows)} zero row(s)",
        )

    # Disconnected support: connectivity no longer forces anything, the
    # embedding dimension alone decides.
    w = cert.w
    is_simplex = D.embedding_dim == n - 1
    origin = None
    if is_simplex:
        origin = "interior" if float(w.min()) > tol.sign else "boundary"
    ncomp = _support_split(delta, tol).nontrivial_count
    return SimplexCertificate(
        is_simplex=is_simplex, n=n, method="rank", lambda_max=pd.lambda_max,
        w=w, origin_position=origin, zero_rows=zero_rows, irreducible_core=False,
        residual=cert.residual,
        detail=(
            f"support splits into {ncomp} nontrivial component(s) plus "
            f"{len(zero_rows)} zero row(s); embedding dimension {D.embedding_dim} "
            f"vs n - 1 = {n - 1}"
        ),
    )


@dataclass(eq=False)
class RankinReport:
    """Outcome of the n = r + 2 closeness check.

    Two more points than dimensions cannot all stay at squared distance
    >= 2 on the unit sphere, so `ok` asserts min d_ij <= 2 (within
    tol.sign) with the closest pair as witness.  A False here means the
    certified embedding dimension and the distances contradict each other
    numerically.
    """

    ok: bool
    n: int
    r: int
    min_offdiag: float
    witness: tuple
    message: str


def rankin_codimension2_check(D: Edm, tol: Tolerances | None = None) -> RankinReport:
    """Check that a unit spherical EDM with n = r + 2 has a pair closer than sqrt(2).

    Parameters
    ----------
    D : Edm
        Unit spherical with n = embedding_dim + 2 (both PreconditionError
        otherwise).
    tol : Tolerances

    Returns
    -------
    RankinReport
        The witness is the 1-based argmin pair (i, j); ok is
        min d_ij <= 2 + tol.sign.
    """
    tol = D.tol if tol is None else tol
    n, r = D.n, D.embedding_dim
    if n != r + 2:
        raise PreconditionError(f"check needs n = r + 2, got n = {n}, r = {r}")
    _require_unit_spherical(D, "rankin_codimension2_check")
    off = D.dist2 + np.where(np.eye(n, dtype=bool), np.inf, 0.0)
    flat = int(np.argmin(off))
    i, j = divmod(flat, n)
    if i > j:
        i, j = j, i
    m = float(off[i, j])
    ok = m <= 2.0 + tol.sign
    if ok:
        message = (
            f"pair ({i + 1}, {j + 1}) at squared distance {m:.17g} <= 2: "
            "no room for n = r + 2 points at min squared distance 2"
        )
    else:
        message = (
            f"numerical inconsistency: min squared distance {m:.17g} > 2 "
            f"although n = r + 2; the rank decision at tol.rank is suspect"
        )
    return RankinReport(ok=ok, n=n, r=r, min_offdiag=m, witness=(i + 1, j + 1), message=message)


@dataclass(eq=False)
class DecompositionBlock:
    """One diagonal block: original node indices, its sub-EDM, its certificate."""

    indices: tuple
    edm: Edm
    certificate: SimplexCertificate

    @property
    def order(self) -> int:
        return len(self.indices)

    @property
    def dim(self) -> int:
        return len(self.indices) - 1


@dataclass(eq=False)
class Decomposition:
    """Permutation of a unit spherical EDM into orthogonal simplex blocks.

    `permutation` lists original 1-based node labels in block order; applying
    it to D puts each block's sub-EDM on the diagonal, every off-block entry
    2.  `isolated_assignment` names the zero rows of Delta folded into the
    last block (they are orthogonal to everything, so any block could take
    them; the last one is the fixed convention).  `cross_check` is the max
    |d_ij - 2| over cross-block pairs and `cross_gram_max` the matching max
    |inner product| between blocks.
    """

    n: int
    r: int
    permutation: tuple
    blocks: tuple
    isolated_assignment: tuple
    subspace_dims: tuple
    cross_check: float
    cross_gram_max: float

    @property
    def block_count(self) -> int:
        return len(self.blocks)


def kuperberg_decompose(D: Edm, tol: Tolerances | None = None) -> Decomposition:
    """Split a unit spherical min-distance-sqrt(2) EDM into orthogonal simplices.

    Applies when 2 <= n - r <= r: the support graph of Delta then has
    exactly n - r nontrivial components, each inducing a simplex block, and
    all cross-block squared distances are 2 (orthogonal subspaces).  Zero
    rows of Delta join the last block.

    Parameters
    ----------
    D : Edm
        Unit spherical, every off-diagonal >= 2 - tol.sign, and
        2 <= n - r <= r for r = D.embedding_dim (PreconditionError
        otherwise).
    tol : Tolerances

    Returns
    -------
    Decomposition
        Blocks ordered by smallest original index, indices ascending inside
        each block.

    Raises
    ------
    ConsistencyError
        If the support component count differs from n - r, a block fails
        its simplex certificate, or a cross-block entry strays from 2.
    """
    tol = D.tol if tol is None else tol
    n, r = D.n, D.embedding_dim
    if not 2 <= n - r:
        raise PreconditionError(f"need n - r >= 2, got n = {n}, r = {r}")
    if not n - r <= r:
        raise PreconditionError(f"need n - r <= r, got n = {n}, r = {r}")
    _require_unit_spherical(D, "kuperberg_decompose")
    dm = delta_of(D)
    delta = nonnegative_delta(dm, tol)
    split = _support_split(delta, tol)
    members = [list(c) for c in split.nontrivial]
    if not members:
        raise ConsistencyError(
            "support of Delta has no edges although n - r >= 2; "
            "a unit spherical input cannot have Delta = 0"
        )
    isolated = tuple(split.isolated)
    # Zero rows are orthogonal to every other point, so they extend any
    # simplex block; fold them all into the last block (decided before the
    # fold, by smallest-member order) and restore ascending order inside.
    members[-1].extend(isolated)
    members[-1].sort()
    if len(members) != n - r:
        raise ConsistencyError(
            f"support splits into {len(members)} block(s), expected n - r = {n - r}"
        )
    blocks = []
    for comp in members:
        idx = np.asarray(comp, dtype=int) - 1
        sub = D.dist2[np.ix_(idx, idx)]
        res = validate_edm(sub, tol)
        if isinstance(res, EdmRejection):
            raise ConsistencyError(
                f"principal submatrix {tuple(comp)} rejected as an EDM: {res.reason}"
            )
        try:
            cert = certify_simplex(res, tol)
        except PreconditionError as exc:
            raise ConsistencyError(f"block {tuple(comp)} failed a simplex precondition: {exc}") from exc
        if not cert.is_simplex:
            raise ConsistencyError(f"block {tuple(comp)} is not a simplex: {cert.detail}")
        blocks.append(DecompositionBlock(indices=tuple(comp), edm=res, certificate=cert))
    permutation = tuple(i for b in blocks for i in b.indices)
    perm_idx = np.asarray(permutation, dtype=int) - 1
    same = np.zeros((n, n), dtype=bool)
    pos = 0
    for b in blocks:
        same[pos:pos + b.order, pos:pos + b.order] = True
        pos += b.order
    Dp = D.dist2[np.ix_(perm_idx, perm_idx)]
    cross = ~same & ~np.eye(n, dtype=bool)
    cross_check = float(np.max(np.abs(Dp[cross] - 2.0))) if cross.any() else 0.0
    if cross_check > tol.sign:
        raise ConsistencyError(
            f"cross-block squared distances deviate from 2 by {cross_check:g}"
        )
    # Gram at the circumcenter is E - D/2 for a unit spherical EDM; cross
    # entries are the inner products between different blocks' points.
    gram = 1.0 - Dp / 2.0
    cross_gram_max = float(np.max(np.abs(gram[cross]))) if cross.any() else 0.0
    if cross_gram_max > tol.solve * scale(D.dist2):
        raise ConsistencyError(
            f"cross-block inner products reach {cross_gram_max:g}; subspaces not orthogonal"
        )
    dims = tuple(b.dim for b in blocks)
    if sum(dims) != r:
        raise ConsistencyError(
            f"block dimensions {dims} sum to {sum(dims)}, expected r = {r}"
        )
    return Decomposition(
        n=n, r=r, permutation=permutation, blocks=tuple(blocks),
        isolated_assignment=isolated, subspace_dims=dims,
        cross_check=cross_check, cross_gram_max=cross_gram_max,
    )


@dataclass(eq=False)
class CrosspolytopeResult:
    """Recognition verdict for the n = 2r extremal case; falsy when declined."""

    ok: bool
    r: int
    permutation: tuple | None
    max_deviation: float | None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def crosspolytope_recognize(D: Edm, tol: Tolerances | None = None) -> CrosspolytopeResult:
    """Recognize the regular crosspolytope among unit spherical EDMs with n = 2r.

    With 2r points in dimension r on the unit sphere at min squared
    distance 2, antipodal pairs are forced.  The returned permutation lists
    the pairs consecutively (smallest-first order), so applying it to D
    yields the canonical form: diagonal 2x2 blocks with 4 off the diagonal,
    2 everywhere else.

    Parameters
    ----------
    D : Edm
        n must equal 2 * embedding_dim (PreconditionError otherwise).
    tol : Tolerances

    Returns
    -------
    CrosspolytopeResult
        Declines (ok False, with reason) rather than raising when D fails
        the distance or sphericity hypotheses.
    """
    tol = D.tol if tol is None else tol
    n, r = D.n, D.embedding_dim
    if n != 2 * r:
        raise PreconditionError(f"recognition needs n = 2r, got n = {n}, r = {r}")
    if r == 1:
        # A single antipodal pair; too small for the block machinery.
        try:
            _require_unit_spherical(D, "crosspolytope_recognize")
        except PreconditionError as exc:
            return CrosspolytopeResult(ok=False, r=r, permutation=None,
                                       max_deviation=None, reason=str(exc))
        dev = float(np.max(np.abs(D.dist2 - gen_crosspolytope(1, D.tol).dist2)))
        if dev > tol.sign:
            return CrosspolytopeResult(
                ok=False, r=r, permutation=None, max_deviation=dev,
                reason=f"2-point matrix deviates from the antipodal form by {dev:g}",
            )
        return CrosspolytopeResult(ok=True, r=r, permutation=(1, 2), max_deviation=dev)
    if min_offdiagonal(D.dist2) < 2.0 - tol.sign:
        return CrosspolytopeResult(
            ok=False, r=r, permutation=None, max_deviation=None,
            reason=f"min squared distance {min_offdiagonal(D.dist2):.17g} is below 2",
        )
    try:
        dec = kuperberg_decompose(D, tol)
    except PreconditionError as exc:
        return CrosspolytopeResult(ok=False, r=r, permutation=None,
                                   max_deviation=None, reason=str(exc))
    bad = [b.indices for b in dec.blocks if b.order != 2]
    if bad:
        # n = 2r with n - r = r blocks of >= 2 nodes each leaves no slack.
        raise ConsistencyError(f"blocks {bad} do not have order 2 although n = 2r")
    Dp = apply_permutation(D.dist2, dec.permutation)
    dev = float(np.max(np.abs(Dp - gen_crosspolytope(r, D.tol).dist2)))
    if dev > tol.sign:
        return CrosspolytopeResult(
            ok=False, r=r, permutation=dec.permutation, max_deviation=dev,
            reason=f"permuted matrix deviates from the canonical form by {dev:g}",
        )
    return CrosspolytopeResult(ok=True, r=r, permutation=dec.permutation, max_deviation=dev)
