"""Pure numpy implementations of the hot kernels.

This module is the fallback used when the compiled ``_ckernels`` extension is
unavailable, and the reference the compiled kernels are tested against. Both
modules expose the same four functions with the same signatures.
"""
import numpy as np

# Columns whose left/right images are both below this (relative) norm belong to
# the common null space of the pair and are completed separately.
_NULL_REL = 1e-12


def sym_eigh(s):
    """Eigendecomposition of a real symmetric matrix, eigenvalues ascending."""
    w, v = np.linalg.eigh(np.asarray(s, dtype=np.float64))
    return w, v


def _complete_orthonormal(q, filled):
    n = q.shape[0]
    for j in range(n):
        if filled[j]:
            continue
        for k in range(n):
            e = np.zeros(n)
            e[k] = 1.0
            for i in range(n):
                if filled[i]:
                    e -= (q[:, i] @ e) * q[:, i]
            norm = np.linalg.norm(e)
            if norm > 0.5:
                q[:, j] = e / norm
                filled[j] = True
                break


def joint_diag_attempt(a, b, mu, nu):
    """One attempt at simultaneous orthogonal bidiagonalization of ``a`` and ``b``.

    The left basis diagonalizes ``a b^T + mu a a^T + nu b b^T``. Each right
    column is the normalized image ``a^T q`` (or ``b^T q`` when that is
    larger), which pairs it with its left column even inside degenerate
    eigenspaces.

    Returns:
        (q_left, q_right, d_a, d_b, off, orth) where ``off`` is the largest
        off-diagonal entry of ``q_left^T a q_right`` and ``q_left^T b q_right``
        and ``orth`` the largest entry of ``q_right^T q_right - 1``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = a.shape[0]
    s = a @ b.T + mu * (a @ a.T) + nu * (b @ b.T)
    s = 0.5 * (s + s.T)
    _, ql = sym_eigh(s)

    scale = max(np.linalg.norm(a), np.linalg.norm(b), 1e-300)
    ya = a.T @ ql
    yb = b.T @ ql
    na = np.linalg.norm(ya, axis=0)
    nb = np.linalg.norm(yb, axis=0)
    qr = np.zeros((n, n))
    filled = np.zeros(n, dtype=bool)
    for j in range(n):
        if na[j] >= nb[j]:
            if na[j] > _NULL_REL * scale:
                qr[:, j] = ya[:, j] / na[j]
                filled[j] = True
        elif nb[j] > _NULL_REL * scale:
            qr[:, j] = yb[:, j] / nb[j]
            filled[j] = True
    if not filled.all():
        _complete_orthonormal(qr, filled)

    da_full = ql.T @ a @ qr
    db_full = ql.T @ b @ qr
    da = np.diag(da_full).copy()
    db = np.diag(db_full).copy()
    off = np.abs(da_full - np.diag(da)).max() if n > 1 else 0.0
    off = max(off, np.abs(db_full - np.diag(db)).max() if n > 1 else 0.0)
    orth = np.abs(qr.T @ qr - np.eye(n)).max()
    return ql, qr, da, db, float(off), float(orth)


def graph_scan(alpha, beta, gammas, rel_tol):
    """Spectrum lines, block invariants and boundary flags along a gamma grid.

    Returns:
        (lam, nu1, nu2, boundary) with ``lam[:, i]`` the lines
        (1+, 1-, 2+, 2-). On boundary rows nu1 and nu2 are zero.
    """
    g = np.asarray(gammas, dtype=np.float64)
    diff = alpha - beta
    tot = alpha + beta
    lam = np.empty((g.size, 4))
    lam[:, 0] = g + diff
    lam[:, 1] = g - diff
    lam[:, 2] = -g + tot
    lam[:, 3] = -g - tot
    tol = rel_tol * np.maximum(abs(alpha) + abs(beta) + np.abs(g), 1.0)
    boundary = (np.abs(lam) <= tol[:, None]).any(axis=1)
    sg = np.sign(lam)
    nu1 = ((sg[:, 0] + sg[:, 1]) / 2).astype(np.int8)
    nu2 = (-(sg[:, 2] + sg[:, 3]) / 2).astype(np.int8)
    nu1[boundary] = 0
    nu2[boundary] = 0
    return lam, nu1, nu2, boundary.astype(np.uint8)


def concurrence_batch(states, u):
    """``|psi^dagger u conj(psi)|`` for every row ``psi`` of ``states``."""
    states = np.asarray(states, dtype=np.complex128)
    u = np.asarray(u, dtype=np.complex128)
    flipped = states.conj() @ u.T
    return np.abs(np.einsum("ij,ij->i", states.conj(), flipped))
