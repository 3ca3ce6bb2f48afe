"""Dense complex linear-algebra kernels: SVD, null space, pseudo-inverse.

Everything here is a thin, checked layer over LAPACK (via numpy). Matrices are
plain ``np.ndarray`` objects of complex dtype.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NoNullSpaceError, NumericalError

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SvdFactors:
    """Full SVD ``a = u @ diag(s) @ vh`` with ``u`` and ``vh`` square unitary."""

    u: np.ndarray
    s: np.ndarray
    vh: np.ndarray

    @property
    def v(self):
        return self.vh.conj().T

    def reconstruct(self):
        rows, cols = self.u.shape[0], self.vh.shape[0]
        sigma = np.zeros((rows, cols), dtype=float)
        k = len(self.s)
        sigma[:k, :k] = np.diag(self.s)
        return self.u @ sigma @ self.vh


def _check_finite(a):
    a = np.asarray(a)
    if a.ndim != 2:
        raise NumericalError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NumericalError(f"matrix of shape {a.shape} has non-finite entries")
    return a


def svd(a) -> SvdFactors:
    """Full singular value decomposition with singular values in descending order."""
    a = _check_finite(a)
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.cond(a) if min(a.shape) else float("nan")
        raise NumericalError(
            f"SVD did not converge for {a.shape[0]}x{a.shape[1]} matrix "
            f"(condition estimate {cond:.3g})"
        ) from exc
    return SvdFactors(u, s, vh)


def null_space_basis(a, rank_tol: float = DEFAULT_RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the right null space of ``a``.

    A right singular vector belongs to the null space when its singular value is
    at most ``rank_tol * sigma_max``. Singular values beyond ``min(rows, cols)``
    are zero by definition, so a wide matrix always contributes its trailing
    ``cols - rows`` right vectors.

    Raises:
        NoNullSpaceError: if no singular value falls under the threshold.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    a = np.asarray(a)
    if a.ndim == 2 and a.shape[0] == 0:
        return np.eye(a.shape[1], dtype=complex)
    f = svd(a)
    cols = a.shape[1]
    s_full = np.zeros(cols)
    s_full[: len(f.s)] = f.s
    sigma_max = s_full[0] if cols else 0.0
    mask = s_full <= rank_tol * sigma_max
    if not mask.any():
        raise NoNullSpaceError(
            f"{a.shape[0]}x{cols} matrix has no null space at rank_tol={rank_tol:g}"
        )
    return f.v[:, mask]


def signal_space_basis(a, count: int) -> np.ndarray:
    """The ``count`` dominant right singular vectors of ``a`` as columns."""
    f = svd(a)
    if count > f.vh.shape[0]:
        raise NumericalError(
            f"requested {count} right vectors from a matrix with {f.vh.shape[0]} columns"
        )
    return f.v[:, :count]


def pseudo_inverse(a, rcond: float = 1e-15) -> np.ndarray:
    """Moore-Penrose pseudo-inverse."""
    a = _check_finite(a)
    try:
        return np.linalg.pinv(a, rcond=rcond)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"pseudo-inverse failed for {a.shape} matrix") from exc
