"""Euclidean distance matrix certification and recovery.

A matrix D of squared pairwise distances is an EDM exactly when its
double-centered transform B = -1/2 (I - e s^T) D (I - s e^T), for any s with
e^T s = 1, is positive semidefinite; rank(B) is then the embedding dimension.
This module certifies that, recovers Gram/configuration factors, certifies
sphericity through the solve D w = e (circumradius (2 e^T w)^(-1/2)), forms
the shifted matrix Delta = D/2 + I - E whose top eigenvalue controls the
embedding dimension of unit spherical EDMs, and generates canonical
configurations (regular simplices, crosspolytopes, random sphere samples).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, PreconditionError
from .spectral import eig, is_psd, numerical_rank, perron, sign_normalize, solve_linear
from .tolerances import DEFAULT_TOL, Tolerances, scale

__all__ = [
    "SPHERICAL",
    "NON_SPHERICAL",
    "E_NOT_IN_COLSPACE",
    "NOT_EDM",
    "Edm",
    "EdmRejection",
    "validate_edm",
    "require_edm",
    "min_offdiagonal",
    "centering_gram",
    "GramFactor",
    "gram_factor",
    "SphericalCertificate",
    "spherical_certificate",
    "DeltaMatrix",
    "delta_of",
    "nonnegative_delta",
    "DeltaDimReport",
    "embedding_dim_via_delta",
    "unit_simplex_gamma",
    "gen_regular_simplex",
    "gen_unit_simplex",
    "gen_crosspolytope",
    "gen_random_spherical",
]

SPHERICAL = "spherical"
NON_SPHERICAL = "non-spherical"
E_NOT_IN_COLSPACE = "e-not-in-colspace"
NOT_EDM = "not-edm"


@dataclass(eq=False)
class Edm:
    """A validated EDM: zero diagonal, nonnegative entries, PSD double-centering.

    `embedding_dim` is the numerical rank of the centered Gram matrix, cached
    at validation time together with the tolerance record that produced it.
    """

    dist2: np.ndarray
    embedding_dim: int
    tol: Tolerances

    @property
    def n(self) -> int:
        return self.dist2.shape[0]

    @property
    def min_offdiagonal(self) -> float:
        return min_offdiagonal(self.dist2)


@dataclass(eq=False)
class EdmRejection:
    """Why a candidate matrix is not an EDM; falsy so callers can branch on it."""

    reason: str  # not-square | not-finite | not-symmetric | nonzero-diagonal | negative-entry | not-psd
    detail: str
    witness_eigenvalue: float | None = None
    witness_vector: np.ndarray | None = None

    def __bool__(self) -> bool:
        return False


def min_offdiagonal(M: np.ndarray) -> float:
    """Smallest off-diagonal entry; +inf for an order-1 matrix."""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if n < 2:
        return float("inf")
    mask = ~np.eye(n, dtype=bool)
    return float(M[mask].min())


def centering_gram(D: np.ndarray, s: np.ndarray) -> np.ndarray:
    """B = -1/2 (I - e s^T) D (I - s e^T), the Gram matrix of D centered at s."""
    D = np.asarray(D, dtype=float)
    s = np.asarray(s, dtype=float).reshape(-1)
    n = D.shape[0]
    J = np.eye(n) - np.outer(np.ones(n), s)
    B = -0.5 * J @ D @ J.T
    return (B + B.T) / 2.0  # kill rounding skew; exact symmetry for eigh


def validate_edm(M, tol: Tolerances = DEFAULT_TOL) -> Edm | EdmRejection:
    """Certify a matrix as an EDM, or explain why it is not one.

    Parameters
    ----------
    M : (n, n) array_like
        Candidate matrix of squared distances.
    tol : Tolerances
        `tol.psd` bounds the PSD slack; `tol.rank` sets the rank cut.

    Returns
    -------
    Edm or EdmRejection
        Acceptance requires: symmetry, zero diagonal (within tol.psd *
        scale), nonnegative off-diagonal entries, and PSD double-centering
        with s = e/n.  Rejection is a value carrying the violated condition
        and, for the PSD case, the offending eigenpair as witness.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return EdmRejection("not-square", f"shape {M.shape}")
    if M.size and not np.all(np.isfinite(M)):
        return EdmRejection("not-finite", "matrix contains NaN or Inf entries")
    s = scale(M)
    if M.size:
        skew = float(np.max(np.abs(M - M.T)))
        if skew > tol.symmetry * s:
            return EdmRejection("not-symmetric", f"max|M - M^T| = {skew:g}")
    D = np.tril(M) + np.tril(M, -1).T
    n = D.shape[0]
    diag_max = float(np.max(np.abs(np.diag(D)))) if n else 0.0
    if diag_max > tol.psd * s:
        return EdmRejection("nonzero-diagonal", f"max|diagonal| = {diag_max:g}")
    np.fill_diagonal(D, 0.0)
    if n >= 2:
        off_min = min_offdiagonal(D)
        if off_min < -tol.psd * s:
            return EdmRejection("negative-entry", f"min off-diagonal = {off_min:g}")
    B = centering_gram(D, np.full(n, 1.0 / n)) if n else np.zeros((0, 0))
    psd = is_psd(B, tol)
    if not psd:
        return EdmRejection(
            "not-psd",
            f"centered Gram has eigenvalue {psd.min_eigenvalue:g}",
            witness_eigenvalue=psd.min_eigenvalue,
            witness_vector=psd.witness,
        )
    return Edm(dist2=D, embedding_dim=numerical_rank(B, tol), tol=tol)


def require_edm(M, tol: Tolerances = DEFAULT_TOL) -> Edm:
    """validate_edm, but a rejection raises PreconditionError."""
    res = validate_edm(M, tol)
    if isinstance(res, EdmRejection):
        raise PreconditionError(f"not an EDM ({res.reason}): {res.detail}")
    return res


@dataclass(eq=False)
class GramFactor:
    """Gram matrix B = P P^T with the configuration rows and centering vector.

    Row i of `config` is the recovered point p_i; the points satisfy
    sum_i s_i p_i = 0 for the stored centering vector s.
    """

    gram: np.ndarray
    config: np.ndarray
    centering: np.ndarray


def gram_factor(D: Edm, s: np.ndarray | None = None) -> GramFactor:
    """Recover a Gram matrix and point configuration from a validated EDM.

    Parameters
    ----------
    D : Edm
    s : (n,) array_like, optional
        Centering vector with e^T s = 1.  When omitted: 2w if the spherical
        certificate puts the points on a unit circumradius sphere (so the
        recovered points are the unit vectors themselves, centered at the
        sphere's center), else e/n.

    Returns
    -------
    GramFactor
        `config` keeps the eigenvector columns with eigenvalue above the
        rank cut, ordered by descending eigenvalue and sign-normalized, each
        scaled by the eigenvalue's square root.

    Raises
    ------
    PreconditionError
        If e^T s deviates from 1 beyond tol.solve.
    ConsistencyError
        If the centered matrix fails the PSD test (cannot factor).
    """
    tol = D.tol
    n = D.n
    if s is None:
        cert = spherical_certificate(D)
        if cert.unit_spherical:
            s = 2.0 * cert.w
        else:
            s = np.full(n, 1.0 / n) if n else np.zeros(0)
    s = np.asarray(s, dtype=float).reshape(-1)
    if s.shape[0] != n:
        raise PreconditionError(f"centering vector length {s.shape[0]} != order {n}")
    if n and abs(float(s.sum()) - 1.0) > tol.solve:
        raise PreconditionError(f"centering vector must satisfy e^T s = 1, got {s.sum():.17g}")
    B = centering_gram(D.dist2, s) if n else np.zeros((0, 0))
    psd = is_psd(B, tol)
    if not psd:
        raise ConsistencyError(
            f"centered matrix of a validated EDM is not PSD (eigenvalue {psd.min_eigenvalue:g})"
        )
    es = eig(B, tol)
    keep = es.values > tol.rank * scale(B)
    cols = es.vectors[:, keep]
    P = cols * np.sqrt(es.values[keep])
    return GramFactor(gram=B, config=P, centering=s)


@dataclass(eq=False)
class SphericalCertificate:
    """Outcome of the sphericity test D w = e.

    status is one of "spherical", "non-spherical", "e-not-in-colspace" (and
    CLI reports use "not-edm" for rejected inputs).  For spherical D the
    circumradius is (2 e^T w)^(-1/2); `unit_spherical` applies the
    circumradius-1 predicate |2 e^T w - 1| <= tol.unit.
    """

    status: str
    w: np.ndarray | None
    etw: float | None
    radius: float | None
    unit_spherical: bool
    residual: float


def spherical_certificate(D: Edm) -> SphericalCertificate:
    """Solve D w = e and classify the configuration's sphericity.

    Any nonzero EDM has e in its column space, so "e-not-in-colspace" only
    arises for the all-zero (all-points-coincident) degenerate input; it is
    still checked defensively through the solve residual.  A consistent
    solve classifies by e^T w: spherical (with radius) when e^T w exceeds
    the PSD slack, non-spherical otherwise.
    """
    tol = D.tol
    n = D.n
    sol = solve_linear(D.dist2, np.ones(n), tol)
    if not sol.consistent:
        return SphericalCertificate(
            status=E_NOT_IN_COLSPACE, w=None, etw=None, radius=None,
            unit_spherical=False, residual=sol.residual,
        )
    etw = float(sol.x.sum())
    if etw <= tol.psd:
        return SphericalCertificate(
            status=NON_SPHERICAL, w=sol.x, etw=etw, radius=None,
            unit_spherical=False, residual=sol.residual,
        )
    radius = float(np.sqrt(1.0 / (2.0 * etw)))
    return SphericalCertificate(
        status=SPHERICAL, w=sol.x, etw=etw, radius=radius,
        unit_spherical=abs(2.0 * etw - 1.0) <= tol.unit, residual=sol.residual,
    )


@dataclass(eq=False)
class DeltaMatrix:
    """The shift Delta = D/2 + I - E, with the source's min off-diagonal.

    Delta has an exactly zero diagonal and is entrywise nonnegative iff every
    squared distance is >= 2.
    """

    delta: np.ndarray
    source_min_offdiag: float


def delta_of(D: Edm) -> DeltaMatrix:
    """Delta = D/2 + I - E by exact entrywise arithmetic."""
    n = D.n
    delta = D.dist2 / 2.0 + np.eye(n) - np.ones((n, n))
    np.fill_diagonal(delta, 0.0)  # 0/2 + 1 - 1 is exact anyway; make it explicit
    return DeltaMatrix(delta=delta, source_min_offdiag=D.min_offdiagonal)


def nonnegative_delta(dm: DeltaMatrix, tol: Tolerances) -> np.ndarray:
    """Delta with rounding-level negatives snapped to 0.

    Valid only when the source min off-diagonal is >= 2 - tol.sign, so every
    negative entry is at most tol.sign/2 in magnitude; larger negatives mean
    the Perron reasoning does not apply and raise PreconditionError.
    """
    if dm.source_min_offdiag < 2.0 - tol.sign:
        raise PreconditionError(
            f"min off-diagonal {dm.source_min_offdiag:.17g} < 2 - tol.sign; Delta is not nonnegative"
        )
    return np.maximum(dm.delta, 0.0)


@dataclass(eq=False)
class DeltaDimReport:
    """Embedding dimension through the top of Delta's spectrum, with checks.

    When `used_perron` is False the min off-diagonal fell below 2 and the
    dimension is the rank(B) fallback; the spectral fields are then None.
    """

    dimension: int
    used_perron: bool
    lambda_max: float | None
    multiplicity: int | None
    lambda_max_ok: bool
    eigvec_residual: float | None
    eigvec_ok: bool
    note: str | None = None


def embedding_dim_via_delta(D: Edm, cert: SphericalCertificate) -> DeltaDimReport:
    """Embedding dimension as n - multiplicity(lambda_max(Delta)).

    Requires a unit spherical certificate: for such D with all off-diagonals
    >= 2, Delta is nonnegative with top eigenvalue 1 and eigenvector w, and
    the dimension is n minus the top multiplicity.  The report carries both
    checks (lambda_max within tol.cluster of 1, max|Delta w - w| within
    tol.solve).  When some off-diagonal drops below 2 the Perron argument is
    inapplicable and the report falls back to rank(B) with a note.

    Raises
    ------
    PreconditionError
        If `cert` is not a unit spherical certificate.
    """
    tol = D.tol
    if cert.status != SPHERICAL or not cert.unit_spherical:
        raise PreconditionError("embedding_dim_via_delta requires a unit spherical certificate")
    dm = delta_of(D)
    if dm.source_min_offdiag < 2.0 - tol.sign:
        return DeltaDimReport(
            dimension=D.embedding_dim, used_perron=False,
            lambda_max=None, multiplicity=None, lambda_max_ok=False,
            eigvec_residual=None, eigvec_ok=False,
            note=(
                f"min off-diagonal {dm.source_min_offdiag:.17g} < 2: Perron reasoning "
                "does not apply; reporting rank of the centered Gram matrix instead"
            ),
        )
    pd = perron(nonnegative_delta(dm, tol), tol)
    residual = float(np.max(np.abs(dm.delta @ cert.w - cert.w)))
    return DeltaDimReport(
        dimension=D.n - pd.multiplicity,
        used_perron=True,
        lambda_max=pd.lambda_max,
        multiplicity=pd.multiplicity,
        lambda_max_ok=abs(pd.lambda_max - 1.0) <= tol.cluster,
        eigvec_residual=residual,
        eigvec_ok=residual <= tol.solve,
    )


def unit_simplex_gamma(n: int) -> float:
    """The edge length gamma = 2n/(n-1) putting the regular simplex on a unit sphere."""
    if n < 2:
        raise PreconditionError("unit simplex scaling needs n >= 2")
    return 2.0 * n / (n - 1.0)


def gen_regular_simplex(n: int, gamma: float, tol: Tolerances = DEFAULT_TOL) -> Edm:
    """EDM of the regular simplex: gamma * (E - I), circumradius sqrt(gamma(n-1)/(2n))."""
    if n < 1:
        raise PreconditionError(f"order must be >= 1, got {n}")
    if not gamma > 0:
        raise PreconditionError(f"gamma must be positive, got {gamma}")
    D = gamma * (np.ones((n, n)) - np.eye(n))
    return require_edm(D, tol)


def gen_unit_simplex(n: int, tol: Tolerances = DEFAULT_TOL) -> Edm:
    """Regular simplex scaled to circumradius 1 (gamma = 2n/(n-1))."""
    return gen_regular_simplex(n, unit_simplex_gamma(n), tol)


def gen_crosspolytope(r: int, tol: Tolerances = DEFAULT_TOL) -> Edm:
    """EDM of the regular r-crosspolytope, vertices +-e_1, ..., +-e_r.

    2r x 2r with antipodal pairs on rows (2i-1, 2i): squared distance 4
    within a pair, 2 across pairs.  Unit spherical with embedding dimension r.
    """
    if r < 1:
        raise PreconditionError(f"crosspolytope dimension must be >= 1, got {r}")
    n = 2 * r
    pair = 2.0 * (np.ones((2, 2)) - np.eye(2))  # adds 2 on top of the global 2
    D = 2.0 * (np.ones((n, n)) - np.eye(n)) + np.kron(np.eye(r), pair)
    return require_edm(D, tol)


def gen_random_spherical(n: int, r: int, seed, tol: Tolerances = DEFAULT_TOL):
    """Sample n points uniformly on the unit (r-1)-sphere and take their EDM.

    Standard-normal r-vectors from the seeded generator, normalized to unit
    length; deterministic per seed.  Requires n >= r + 1 so the affine hull
    is generically full and the circumcenter is the origin.

    Returns
    -------
    (Edm, ndarray)
        The validated squared-distance matrix and the (n, r) point grid.
    """
    if n <= r:
        raise PreconditionError(f"need n >= r + 1 points, got n={n}, r={r}")
    if r < 1:
        raise PreconditionError(f"sphere dimension must be >= 1, got r={r}")
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, r))
    norms = np.linalg.norm(X, axis=1)
    while np.any(norms < 1e-12):  # probability ~0; keep determinism per seed
        bad = norms < 1e-12
        X[bad] = rng.standard_normal((int(bad.sum()), r))
        norms = np.linalg.norm(X, axis=1)
    X /= norms[:, None]
    diff = X[:, None, :] - X[None, :, :]
    D = np.einsum("ijk,ijk->ij", diff, diff)  # bitwise symmetric, zero diagonal
    edm = validate_edm(D, tol)
    if isinstance(edm, EdmRejection):
        raise ConsistencyError(f"sampled sphere configuration rejected: {edm.reason} ({edm.detail})")
    return edm, X
