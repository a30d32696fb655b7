"""Dense symmetric eigendecomposition, rank-d truncation and error sweeps.

Eigenvalues are ordered by descending *algebraic* value and the truncation
keeps the first d of them. For positive semi-definite kernel matrices this
coincides with magnitude ordering except for round-off-level negative
eigenvalues; for genuinely indefinite matrices the two orderings differ and
the algebraic convention is followed deliberately.

Eigenvectors carry a deterministic sign: the largest-magnitude coordinate of
each vector is positive (ties broken by the lowest index), so repeated runs
and golden files agree. Invariants on degenerate (repeated) eigenvalues are
meaningful only at the subspace level (orthonormality, reconstruction), never
for individual vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EigensolverError


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Descending eigenvalues with orthonormal eigenvectors, column l <-> value l."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        self.eigenvectors.setflags(write=False)

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[0]


@dataclass(frozen=True, eq=False)
class RankSweepResult:
    """Per-rank error metrics of the spectral truncation.

    ``frobenius_error`` and ``tail_abs_sum`` are non-increasing in the rank;
    ``max_entry_error`` need not be monotone. At rank n all errors are zero
    (nothing is discarded) and ``sup_norm_tail`` is reported as 0 for the
    empty tail.
    """

    ranks: np.ndarray
    max_entry_error: np.ndarray
    frobenius_error: np.ndarray
    spectral_error: np.ndarray
    tail_abs_sum: np.ndarray
    sup_norm_tail: np.ndarray

    def __post_init__(self):
        for a in (self.ranks, self.max_entry_error, self.frobenius_error,
                  self.spectral_error, self.tail_abs_sum, self.sup_norm_tail):
            a.setflags(write=False)


def _as_symmetric(gram) -> np.ndarray:
    K = np.asarray(gram, dtype=float)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {K.shape}")
    if not np.all(np.isfinite(K)):
        raise ValueError("matrix contains non-finite entries")
    if not np.array_equal(K, K.T):
        raise ValueError("matrix is not exactly symmetric; symmetrize it first")
    return K


def eigendecompose(gram) -> EigenDecomposition:
    """Full eigendecomposition of a symmetric matrix, descending order.

    Accepts a :class:`~kernlr.kernels.GramMatrix` or a plain symmetric array.
    Raises :class:`EigensolverError` if the underlying solver fails to
    converge within its iteration cap.
    """
    K = _as_symmetric(gram)
    try:
        w, U = np.linalg.eigh(K)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"symmetric eigensolver did not converge: {exc}") from exc
    w = w[::-1].copy()
    U = U[:, ::-1].copy()
    # Sign convention: largest-magnitude coordinate positive, first index wins ties.
    lead = np.argmax(np.abs(U), axis=0)
    flip = U[lead, np.arange(U.shape[1])] < 0
    U[:, flip] *= -1.0
    return EigenDecomposition(eigenvalues=w, eigenvectors=U)


def _mirror_upper(M: np.ndarray) -> np.ndarray:
    """Copy the upper triangle onto the lower one: exact symmetry."""
    return np.triu(M) + np.triu(M, 1).T


def truncate(eig: EigenDecomposition, d: int) -> np.ndarray:
    """Rank-d reconstruction: the sum of the first d eigenvalue/vector terms."""
    n = eig.n
    d = _check_rank(d, n)
    if d == 0:
        return np.zeros((n, n))
    U = eig.eigenvectors[:, :d]
    return _mirror_upper((U * eig.eigenvalues[:d]) @ U.T)


def _check_rank(d, n) -> int:
    if d != int(d) or not 0 <= int(d) <= n:
        raise ValueError(f"rank must be an integer in [0, {n}], got {d!r}")
    return int(d)


def tail_abs_sum(eig: EigenDecomposition, d: int) -> float:
    """Sum of absolute eigenvalues discarded by a rank-d truncation."""
    d = _check_rank(d, eig.n)
    return float(np.abs(eig.eigenvalues[d:]).sum())


def sup_norm_tail(eig: EigenDecomposition, d: int) -> float:
    """Largest absolute eigenvector coordinate over the discarded tail."""
    if not 0 <= d < eig.n:
        raise ValueError(f"need 0 <= d < n={eig.n} (the tail must be non-empty), got {d!r}")
    return float(np.abs(eig.eigenvectors[:, int(d):]).max())


def _largest_discarded(w: np.ndarray, d: int) -> float:
    # w is descending, so the extreme magnitudes of w[d:] sit at its ends.
    if d >= w.shape[0]:
        return 0.0
    return float(max(abs(w[d]), abs(w[-1])))


def error_sweep(gram, eig: EigenDecomposition, ranks) -> RankSweepResult:
    """Residual error metrics of the rank-d truncation on a grid of ranks.

    The residual is updated incrementally, ``R_d = R_{d-1} - w_d u_d u_d^T``,
    and measured at each requested rank:

    * ``max_entry_error``: largest absolute entry of the residual,
    * ``frobenius_error``: Frobenius norm of the residual,
    * ``spectral_error``: largest-magnitude discarded eigenvalue,
    * ``tail_abs_sum`` and ``sup_norm_tail`` of the discarded eigenpairs.

    ``ranks`` must be sorted ascending, all within [0, n].
    """
    K = _as_symmetric(gram)
    n = eig.n
    if K.shape[0] != n:
        raise ValueError(f"matrix size {K.shape[0]} does not match decomposition size {n}")
    ranks = [_check_rank(d, n) for d in ranks]
    if ranks != sorted(ranks):
        raise ValueError("ranks must be sorted ascending")

    w, U = eig.eigenvalues, eig.eigenvectors
    wanted = set(ranks)
    out = {}
    R = K.copy()
    for d in range(0, (max(ranks) if ranks else 0) + 1):
        if d > 0:
            R -= w[d - 1] * np.outer(U[:, d - 1], U[:, d - 1])
        if d in wanted:
            if d == n:  # nothing discarded: errors are zero by definition
                out[d] = (0.0, 0.0, 0.0, 0.0, 0.0)
            else:
                out[d] = (
                    float(np.abs(R).max()),
                    float(np.linalg.norm(R)),
                    _largest_discarded(w, d),
                    float(np.abs(w[d:]).sum()),
                    float(np.abs(U[:, d:]).max()),
                )
    cols = np.array([out[d] for d in ranks], dtype=float).reshape(len(ranks), 5)
    return RankSweepResult(
        ranks=np.array(ranks, dtype=int),
        max_entry_error=cols[:, 0].copy(),
        frobenius_error=cols[:, 1].copy(),
        spectral_error=cols[:, 2].copy(),
        tail_abs_sum=cols[:, 3].copy(),
        sup_norm_tail=cols[:, 4].copy(),
    )
