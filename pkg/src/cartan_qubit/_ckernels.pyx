# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for small dense matrices (n <= 8).

Drop-in replacement for :mod:`cartan_qubit._pykernels`; see that module for
the contracts.
"""
import numpy as np

from . import _pykernels

from libc.math cimport fabs, sqrt

cdef enum:
    NMAX = 8
    MAX_SWEEPS = 60

cdef double NULL_REL = 1e-12


cdef inline int _idx(int i, int j) nogil:
    return i * NMAX + j


cdef void _jacobi(double* a, double* v, double* w, int n) noexcept nogil:
    """Cyclic Jacobi on the leading n x n block of ``a`` (row stride NMAX).

    On exit ``w`` holds the eigenvalues ascending and the columns of ``v`` the
    matching eigenvectors. ``a`` is destroyed.
    """
    cdef int p, q, k, sweep, i, j, m
    cdef double off, frob, apq, tau, t, c, s, akp, akq, tmp
    for i in range(n):
        for j in range(n):
            v[_idx(i, j)] = 1.0 if i == j else 0.0
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[_idx(i, j)] * a[_idx(i, j)]
    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[_idx(p, q)] * a[_idx(p, q)]
        if off <= 1e-34 * frob or off == 0.0:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[_idx(p, q)]
                if apq == 0.0:
                    continue
                tau = (a[_idx(q, q)] - a[_idx(p, p)]) / (2.0 * apq)
                if fabs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[_idx(k, p)]
                    akq = a[_idx(k, q)]
                    a[_idx(k, p)] = c * akp - s * akq
                    a[_idx(k, q)] = s * akp + c * akq
                for k in range(n):
                    akp = a[_idx(p, k)]
                    akq = a[_idx(q, k)]
                    a[_idx(p, k)] = c * akp - s * akq
                    a[_idx(q, k)] = s * akp + c * akq
                for k in range(n):
                    akp = v[_idx(k, p)]
                    akq = v[_idx(k, q)]
                    v[_idx(k, p)] = c * akp - s * akq
                    v[_idx(k, q)] = s * akp + c * akq
    for i in range(n):
        w[i] = a[_idx(i, i)]
    # selection sort, ascending
    for i in range(n - 1):
        m = i
        for j in range(i + 1, n):
            if w[j] < w[m]:
                m = j
        if m != i:
            tmp = w[i]
            w[i] = w[m]
            w[m] = tmp
            for k in range(n):
                tmp = v[_idx(k, i)]
                v[_idx(k, i)] = v[_idx(k, m)]
                v[_idx(k, m)] = tmp


def sym_eigh(s):
    cdef const double[:, ::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef int n = sv.shape[0]
    if n > NMAX or sv.shape[1] != n:
        raise ValueError("sym_eigh supports square matrices up to 8x8")
    cdef double a[NMAX * NMAX]
    cdef double v[NMAX * NMAX]
    cdef double w[NMAX]
    cdef int i, j
    for i in range(n):
        for j in range(n):
            a[_idx(i, j)] = 0.5 * (sv[i, j] + sv[j, i])
    with nogil:
        _jacobi(a, v, w, n)
    wout = np.empty(n)
    vout = np.empty((n, n))
    cdef double[::1] wo = wout
    cdef double[:, ::1] vo = vout
    for i in range(n):
        wo[i] = w[i]
        for j in range(n):
            vo[i, j] = v[_idx(i, j)]
    return wout, vout


cdef void _complete(double* qr, int* filled, int n) noexcept nogil:
    cdef int j, k, i, r
    cdef double e[NMAX]
    cdef double dot, norm
    for j in range(n):
        if filled[j]:
            continue
        for k in range(n):
            for r in range(n):
                e[r] = 1.0 if r == k else 0.0
            for i in range(n):
                if filled[i]:
                    dot = 0.0
                    for r in range(n):
                        dot += qr[_idx(r, i)] * e[r]
                    for r in range(n):
                        e[r] -= dot * qr[_idx(r, i)]
            norm = 0.0
            for r in range(n):
                norm += e[r] * e[r]
            norm = sqrt(norm)
            if norm > 0.5:
                for r in range(n):
                    qr[_idx(r, j)] = e[r] / norm
                filled[j] = 1
                break


def joint_diag_attempt(a, b, double mu, double nu):
    cdef const double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[:, ::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef int n = av.shape[0]
    if n > NMAX or av.shape[1] != n or bv.shape[0] != n or bv.shape[1] != n:
        raise ValueError("joint_diag_attempt supports square matrices up to 8x8")
    cdef double s[NMAX * NMAX]
    cdef double ql[NMAX * NMAX]
    cdef double qr[NMAX * NMAX]
    cdef double w[NMAX]
    cdef double ya[NMAX]
    cdef double yb[NMAX]
    cdef int filled[NMAX]
    cdef double da[NMAX]
    cdef double db[NMAX]
    cdef int i, j, k, r
    cdef double acc, na, nb, scale, na2, nb2, xa, xb, off, orth, tmp
    with nogil:
        na2 = 0.0
        nb2 = 0.0
        for i in range(n):
            for j in range(n):
                na2 += av[i, j] * av[i, j]
                nb2 += bv[i, j] * bv[i, j]
        scale = sqrt(na2) if na2 > nb2 else sqrt(nb2)
        if scale < 1e-300:
            scale = 1e-300
        for i in range(n):
            for j in range(i, n):
                acc = 0.0
                for k in range(n):
                    acc += (0.5 * (av[i, k] * bv[j, k] + av[j, k] * bv[i, k])
                            + mu * av[i, k] * av[j, k] + nu * bv[i, k] * bv[j, k])
                s[_idx(i, j)] = acc
                s[_idx(j, i)] = acc
        _jacobi(s, ql, w, n)
        for j in range(n):
            # ya = a^T q_j, yb = b^T q_j
            na = 0.0
            nb = 0.0
            for r in range(n):
                xa = 0.0
                xb = 0.0
                for k in range(n):
                    xa += av[k, r] * ql[_idx(k, j)]
                    xb += bv[k, r] * ql[_idx(k, j)]
                ya[r] = xa
                yb[r] = xb
                na += xa * xa
                nb += xb * xb
            na = sqrt(na)
            nb = sqrt(nb)
            filled[j] = 0
            if na >= nb:
                if na > NULL_REL * scale:
                    for r in range(n):
                        qr[_idx(r, j)] = ya[r] / na
                    filled[j] = 1
            elif nb > NULL_REL * scale:
                for r in range(n):
                    qr[_idx(r, j)] = yb[r] / nb
                filled[j] = 1
            if not filled[j]:
                for r in range(n):
                    qr[_idx(r, j)] = 0.0
        _complete(qr, filled, n)
        off = 0.0
        orth = 0.0
        for i in range(n):
            for j in range(n):
                xa = 0.0
                xb = 0.0
                for k in range(n):
                    # (ql^T a qr)[i, j]
                    acc = 0.0
                    tmp = 0.0
                    for r in range(n):
                        acc += av[k, r] * qr[_idx(r, j)]
                        tmp += bv[k, r] * qr[_idx(r, j)]
                    xa += ql[_idx(k, i)] * acc
                    xb += ql[_idx(k, i)] * tmp
                if i == j:
                    da[i] = xa
                    db[i] = xb
                else:
                    if fabs(xa) > off:
                        off = fabs(xa)
                    if fabs(xb) > off:
                        off = fabs(xb)
                acc = 0.0
                for r in range(n):
                    acc += qr[_idx(r, i)] * qr[_idx(r, j)]
                if i == j:
                    acc -= 1.0
                if fabs(acc) > orth:
                    orth = fabs(acc)
    qlo = np.empty((n, n))
    qro = np.empty((n, n))
    dao = np.empty(n)
    dbo = np.empty(n)
    cdef double[:, ::1] qlv = qlo
    cdef double[:, ::1] qrv = qro
    cdef double[::1] dav = dao
    cdef double[::1] dbv = dbo
    for i in range(n):
        dav[i] = da[i]
        dbv[i] = db[i]
        for j in range(n):
            qlv[i, j] = ql[_idx(i, j)]
            qrv[i, j] = qr[_idx(i, j)]
    return qlo, qro, dao, dbo, off, orth


cdef inline double _sign(double x) noexcept nogil:
    if x > 0.0:
        return 1.0
    if x < 0.0:
        return -1.0
    return 0.0


def graph_scan(double alpha, double beta, gammas, double rel_tol):
    cdef const double[::1] g = np.ascontiguousarray(gammas, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    lam_o = np.empty((n, 4))
    nu1_o = np.empty(n, dtype=np.int8)
    nu2_o = np.empty(n, dtype=np.int8)
    bnd_o = np.empty(n, dtype=np.uint8)
    cdef double[:, ::1] lam = lam_o
    cdef signed char[::1] nu1 = nu1_o
    cdef signed char[::1] nu2 = nu2_o
    cdef unsigned char[::1] bnd = bnd_o
    cdef double diff = alpha - beta
    cdef double tot = alpha + beta
    cdef double base = fabs(alpha) + fabs(beta)
    cdef double tol, l0, l1, l2, l3, gi
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            gi = g[i]
            l0 = gi + diff
            l1 = gi - diff
            l2 = -gi + tot
            l3 = -gi - tot
            lam[i, 0] = l0
            lam[i, 1] = l1
            lam[i, 2] = l2
            lam[i, 3] = l3
            tol = base + fabs(gi)
            if tol < 1.0:
                tol = 1.0
            tol = rel_tol * tol
            if fabs(l0) <= tol or fabs(l1) <= tol or fabs(l2) <= tol or fabs(l3) <= tol:
                bnd[i] = 1
                nu1[i] = 0
                nu2[i] = 0
            else:
                bnd[i] = 0
                nu1[i] = <signed char>((_sign(l0) + _sign(l1)) / 2.0)
                nu2[i] = <signed char>(-(_sign(l2) + _sign(l3)) / 2.0)
    return lam_o, nu1_o, nu2_o, bnd_o


# A batched BLAS product beats a hand-written loop here; share the numpy kernel.
concurrence_batch = _pykernels.concurrence_batch
