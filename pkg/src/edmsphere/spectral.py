"""Dense symmetric spectral primitives.

Everything downstream (EDM certification, Perron data of nonnegative
matrices, embedding dimensions) consumes the five operations here:
`eig`, `is_psd`, `numerical_rank`, `perron` and `solve_linear`.  All of them
are pure functions of their inputs and deterministic for identical input
bits, so results are safe to share across threads.

Matrices enter as plain ndarrays.  `as_symmetric` is the constructor for the
"symmetric matrix" contract: it checks finiteness and near-symmetry, then
mirrors the lower triangle so the stored matrix is exactly symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectralError
from .tolerances import DEFAULT_TOL, Tolerances, scale

__all__ = [
    "as_symmetric",
    "sign_normalize",
    "EigenSystem",
    "eig",
    "PsdResult",
    "is_psd",
    "numerical_rank",
    "PerronData",
    "perron",
    "LinearSolution",
    "solve_linear",
]


def as_symmetric(M, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Validate and canonicalize a symmetric matrix.

    Checks that `M` is square and finite and that max|M - M^T| does not
    exceed ``tol.symmetry * scale(M)``, then returns a new array whose upper
    triangle is the mirror of the lower one, so symmetry holds exactly.

    Raises
    ------
    ValueError
        If `M` is not square, contains NaN/Inf, or is asymmetric beyond
        tolerance.
    """
    M = np.array(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if M.size and not np.all(np.isfinite(M)):
        raise ValueError("matrix contains NaN or Inf entries")
    if M.size:
        skew = float(np.max(np.abs(M - M.T)))
        if skew > tol.symmetry * scale(M):
            raise ValueError(f"matrix is not symmetric (max|M - M^T| = {skew:g})")
    lower = np.tril(M)
    return lower + np.tril(M, -1).T


def sign_normalize(v: np.ndarray) -> np.ndarray:
    """Flip `v` so its largest-magnitude entry is positive (ties: lowest index)."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        return v.copy()
    lead = int(np.argmax(np.abs(v)))
    return -v if v[lead] < 0 else v.copy()


@dataclass(eq=False)
class EigenSystem:
    """Full spectral decomposition of a symmetric matrix.

    `values` are non-increasing; `vectors[:, i]` is the orthonormal
    eigenvector for `values[i]`, sign-normalized for determinism.
    `tolerance` records the thresholds used downstream.
    """

    values: np.ndarray
    vectors: np.ndarray
    tolerance: Tolerances

    @property
    def order(self) -> int:
        return self.values.shape[0]

    def reconstruction_residual(self, M) -> float:
        """max|V diag(values) V^T - M|, the invariant checked by the test suite."""
        rebuilt = (self.vectors * self.values) @ self.vectors.T
        return float(np.max(np.abs(rebuilt - np.asarray(M, dtype=float)))) if self.order else 0.0


def eig(M, tol: Tolerances = DEFAULT_TOL) -> EigenSystem:
    """Eigendecomposition of a symmetric matrix, eigenvalues descending.

    Parameters
    ----------
    M : (n, n) array_like
        Symmetric finite matrix (canonicalized via `as_symmetric`).
    tol : Tolerances
        Threshold record stored on the result for downstream use.

    Returns
    -------
    EigenSystem
        Eigenvalues in non-increasing order with matching orthonormal
        eigenvector columns.  Each column's largest-magnitude entry is made
        positive so identical input bits give identical output bits.

    Raises
    ------
    SpectralError
        If the underlying solver fails to converge.
    """
    S = as_symmetric(M, tol)
    try:
        values, vectors = np.linalg.eigh(S)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigendecomposition failed to converge: {exc}") from exc
    values = values[::-1].copy()
    vectors = vectors[:, ::-1]
    cols = np.empty_like(vectors)
    for j in range(vectors.shape[1]):
        cols[:, j] = sign_normalize(vectors[:, j])
    return EigenSystem(values=values, vectors=cols, tolerance=tol)


@dataclass(eq=False)
class PsdResult:
    """Outcome of a PSD test; on failure carries the offending eigenpair."""

    ok: bool
    min_eigenvalue: float
    witness: np.ndarray | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_psd(M, tol: Tolerances = DEFAULT_TOL) -> PsdResult:
    """Test min eigenvalue >= -tol.psd * scale(M); witness the violation otherwise."""
    es = eig(M, tol)
    if es.order == 0:
        return PsdResult(ok=True, min_eigenvalue=0.0)
    lam_min = float(es.values[-1])
    if lam_min >= -tol.psd * scale(M):
        return PsdResult(ok=True, min_eigenvalue=lam_min)
    return PsdResult(ok=False, min_eigenvalue=lam_min, witness=es.vectors[:, -1].copy())


def numerical_rank(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Count eigenvalues with |lambda| > tol.rank * scale(M)."""
    es = eig(M, tol)
    return int(np.count_nonzero(np.abs(es.values) > tol.rank * scale(M)))


@dataclass(eq=False)
class PerronData:
    """Top-of-spectrum data of a nonnegative symmetric matrix.

    `multiplicity` counts eigenvalues within `tol.cluster` of `lambda_max`;
    `xi` is the leading eigenvector, sign-normalized.  For an irreducible
    nonnegative matrix, multiplicity is 1 and xi is entrywise positive.
    """

    lambda_max: float
    multiplicity: int
    xi: np.ndarray


def perron(M, tol: Tolerances = DEFAULT_TOL) -> PerronData:
    """Largest eigenvalue, its clustered multiplicity, and leading eigenvector.

    Parameters
    ----------
    M : (n, n) array_like
        Symmetric matrix with nonnegative entries.
    tol : Tolerances
        `tol.cluster` is the absolute band for multiplicity counting.

    Returns
    -------
    PerronData

    Raises
    ------
    ValueError
        If any entry of `M` is negative (precondition violation).
    """
    S = as_symmetric(M, tol)
    if S.size and float(S.min()) < 0.0:
        raise ValueError(f"perron requires nonnegative entries, found {S.min():g}")
    es = eig(S, tol)
    lam = float(es.values[0])
    multiplicity = int(np.count_nonzero(es.values >= lam - tol.cluster))
    return PerronData(lambda_max=lam, multiplicity=multiplicity, xi=es.vectors[:, 0].copy())


@dataclass(eq=False)
class LinearSolution:
    """Minimum-norm solve result; `consistent` is False when b is outside the column space."""

    x: np.ndarray
    residual: float
    consistent: bool


def solve_linear(M, b, tol: Tolerances = DEFAULT_TOL) -> LinearSolution:
    """Minimum-norm solution of M x = b through the spectral pseudoinverse.

    Eigenvalues with |lambda| <= tol.rank * scale(M) are treated as zero.
    The result is flagged inconsistent when the residual max|M x - b|
    exceeds ``tol.solve * scale(M)``, i.e. when b has a component outside
    the column space of M.
    """
    S = as_symmetric(M, tol)
    es = eig(S, tol)
    b = np.asarray(b, dtype=float).reshape(-1)
    if b.shape[0] != es.order:
        raise ValueError(f"shape mismatch: matrix order {es.order}, vector length {b.shape[0]}")
    s = scale(S)
    keep = np.abs(es.values) > tol.rank * s
    inv = np.zeros_like(es.values)
    inv[keep] = 1.0 / es.values[keep]
    x = es.vectors @ (inv * (es.vectors.T @ b))
    residual = float(np.max(np.abs(S @ x - b))) if b.size else 0.0
    return LinearSolution(x=x, residual=residual, consistent=residual <= tol.solve * s)
