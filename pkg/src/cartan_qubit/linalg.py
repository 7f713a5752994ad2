"""Dense linear algebra for small complex matrices (n <= 8).

Matrices are plain ``numpy`` arrays. Tolerances are absolute on matrices of
order-one norm and are scaled by ``max(1, ||m||_F)`` otherwise.
"""
from functools import reduce
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import NotHermitian, NotSimultaneouslyDiagonalizable, NotUnitary

DEFAULT_TOL = 1e-9
MAX_RETRIES = 8
# relative eigenvalue spread below which the unrandomized attempt is distrusted
_CLUSTER_REL = 1e-7
# the pairing step normalizes images a^T q; beyond this defect the SVD is used
_ORTH_TOL = 1e-13


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(m)))


def is_square(m: np.ndarray) -> bool:
    return m.ndim == 2 and m.shape[0] == m.shape[1]


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return is_square(m) and np.abs(m - m.conj().T).max() <= tol * _scale(m)


def is_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    if not is_square(m):
        return False
    return np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() <= tol


def is_real(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return not np.iscomplexobj(m) or np.abs(m.imag).max(initial=0.0) <= tol * _scale(m)


def is_orthogonal(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return is_real(m, tol) and is_unitary(np.real(m), tol)


def is_special_orthogonal(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return is_orthogonal(m, tol) and abs(np.linalg.det(np.real(m)) - 1.0) <= tol


def tensor(*ms: np.ndarray) -> np.ndarray:
    """Kronecker product ``ms[0] ⊗ ms[1] ⊗ ...`` (first factor most significant)."""
    if not ms:
        raise ValueError("tensor() needs at least one factor")
    return reduce(np.kron, (np.asarray(m) for m in ms))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


class EigenSystem(NamedTuple):
    """Eigenvalues in ascending order and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def fix_vector_phases(vectors: np.ndarray) -> np.ndarray:
    """Rescale each column so its largest-magnitude entry is real and positive.

    Entries within 1e-12 of the maximum magnitude tie; the first one wins.
    """
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        mags = np.abs(col)
        k = int(np.argmax(mags >= mags.max() - 1e-12))
        if mags[k] > 0:
            out[:, j] = col * (abs(col[k]) / col[k])
    return out


def eig_hermitian(h: np.ndarray, tol: float = DEFAULT_TOL) -> EigenSystem:
    """Eigendecomposition of a Hermitian matrix.

    Raises:
        NotHermitian: if ``h`` is not Hermitian within ``tol``.
    """
    h = np.asarray(h, dtype=np.complex128)
    if not is_hermitian(h, tol):
        raise NotHermitian("matrix is not Hermitian")
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return EigenSystem(w, fix_vector_phases(v))


def expm_i(h: np.ndarray, t: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``exp(-i h t)`` for Hermitian ``h``, via the spectral decomposition."""
    w, v = eig_hermitian(h, tol)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


class JointDiagonalization(NamedTuple):
    q_left: np.ndarray
    q_right: np.ndarray
    d_a: np.ndarray
    d_b: np.ndarray


def joint_orthogonal_diagonalize(a: np.ndarray, b: np.ndarray,
                                 tol: float = DEFAULT_TOL,
                                 rng: np.random.Generator = None) -> JointDiagonalization:
    """Finds orthogonal ``Q_L``, ``Q_R`` making ``Q_L^T a Q_R`` and ``Q_L^T b Q_R`` diagonal.

    Such a pair exists iff ``a b^T`` and ``a^T b`` are symmetric. The first
    attempt diagonalizes the symmetric part of ``a b^T`` and pairs each left
    vector ``q`` with the normalized image ``a^T q`` (or ``b^T q``). If that
    spectrum is clustered or the result misses ``tol``, up to eight retries
    take the singular value decomposition of ``cos(phi) a + sin(phi) b`` for
    random ``phi``. Both returned matrices have determinant +1: a ``-1`` is
    absorbed by negating the last column and the last diagonal entries.

    Args:
        a: Real square matrix.
        b: Real square matrix of the same shape.
        tol: Acceptance threshold on off-diagonal entries.
        rng: Source for the retry coefficients; defaults to a generator seeded
            from ``CARTAN_QUBIT_SEED`` (0 if unset).

    Raises:
        NotSimultaneouslyDiagonalizable: when no attempt reaches ``tol``.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if not (is_real(a, tol) and is_real(b, tol)):
        raise ValueError("joint_orthogonal_diagonalize expects real matrices")
    a = np.ascontiguousarray(np.real(a), dtype=np.float64)
    b = np.ascontiguousarray(np.real(b), dtype=np.float64)
    if a.shape != b.shape or not is_square(a):
        raise ValueError("expected two square matrices of equal shape")
    kernels = _backend.kernels
    tol_abs = tol * max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))

    ql, qr, da, db, resid, orth = kernels.joint_diag_attempt(a, b, 0.0, 0.0)
    if resid >= tol_abs or orth > _ORTH_TOL or _clustered(da * db, a, b):
        if rng is None:
            rng = _backend.make_rng()
        best = resid
        for _ in range(MAX_RETRIES):
            ql, qr, da, db, resid = _svd_attempt(a, b, rng.uniform(0.0, np.pi))
            best = min(best, resid)
            if resid < tol_abs:
                break
        else:
            raise NotSimultaneouslyDiagonalizable(
                f"off-diagonal residual {best:.3e} exceeds {tol_abs:.3e}")

    if np.linalg.det(ql) < 0:
        ql[:, -1] *= -1
        da[-1] *= -1
        db[-1] *= -1
    if np.linalg.det(qr) < 0:
        qr[:, -1] *= -1
        da[-1] *= -1
        db[-1] *= -1
    return JointDiagonalization(ql, qr, da, db)


def _svd_attempt(a: np.ndarray, b: np.ndarray, phi: float):
    # The singular vectors of a generic combination diagonalize both parts;
    # unlike the products a a^T, b b^T this keeps small singular values exact.
    u, _, vt = np.linalg.svd(np.cos(phi) * a + np.sin(phi) * b)
    qr = vt.T
    da_full = u.T @ a @ qr
    db_full = u.T @ b @ qr
    da = np.diag(da_full).copy()
    db = np.diag(db_full).copy()
    off = max(np.abs(da_full - np.diag(da)).max(), np.abs(db_full - np.diag(db)).max())
    return u, qr, da, db, float(off)


def _clustered(products: np.ndarray, a: np.ndarray, b: np.ndarray) -> bool:
    # After a successful attempt d_a * d_b is the spectrum of sym(a b^T).
    # Degenerate spectra leave the pairing to the residual check; the
    # randomized pass is cheap insurance when the spread is this small.
    w = np.sort(products)
    width = _CLUSTER_REL * float(np.linalg.norm(a) * np.linalg.norm(b))
    return bool(width > 0 and np.any(np.diff(w) < width))
