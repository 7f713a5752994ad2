"""Cartan (KAK) decomposition of two-qubit gates.

Every ``u`` in U(4) factors as::

    u = (A1 ⊗ A0) · exp(i (k0 1 + k1 Σx + k2 Σy + k3 Σz)) · (B1 ⊗ B0)

with ``Σi = σi ⊗ σi`` and ``A1, A0, B1, B0`` in SU(2). In the magic basis
local gates are real orthogonal and the interaction term is diagonal, so the
decomposition reduces to a simultaneous orthogonal diagonalization of the
real and imaginary parts of ``M^† u M``.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .entanglement import MAGIC
from .errors import (DecompositionFailed, NotSimultaneouslyDiagonalizable,
                     NotSpecialOrthogonal, NotTwoQubit, NotUnitary)
from .linalg import DEFAULT_TOL, is_special_orthogonal, is_unitary, joint_orthogonal_diagonalize
from .pauli import PAULIS

_MAGIC_H = MAGIC.conj().T

# theta = THETA_K_MATRIX @ (k0, k1, k2, k3): diagonal phases of the interaction
# term in the magic basis. THETA_K_MATRIX @ THETA_K_MATRIX.T = 4 * identity.
THETA_K_MATRIX = np.array([
    [1, 1, -1, 1],
    [1, 1, 1, -1],
    [1, -1, -1, -1],
    [1, -1, 1, 1],
], dtype=np.int64)
THETA_K_MATRIX.flags.writeable = False


def theta_from_k(k0: float, k) -> np.ndarray:
    """Magic-basis phases of ``exp(i (k0 + k·Σ))``."""
    return THETA_K_MATRIX @ np.concatenate([[k0], np.asarray(k, dtype=np.float64)])


def k_from_theta(theta) -> Tuple[float, np.ndarray]:
    """Exact inverse of :func:`theta_from_k`, using ``T^-1 = T^T / 4``."""
    kk = THETA_K_MATRIX.T @ np.asarray(theta, dtype=np.float64) / 4.0
    return float(kk[0]), kk[1:]


def interaction_matrix(k0: float, k) -> np.ndarray:
    """``exp(i (k0 1 + k·Σ))`` evaluated through its magic-basis diagonal."""
    phases = np.exp(1j * theta_from_k(k0, k))
    return (MAGIC * phases) @ _MAGIC_H


def _frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128)
    m.flags.writeable = False
    return m


@dataclass(frozen=True, eq=False)
class KakFactors:
    """Result of :func:`kak_decompose`.

    Attributes:
        k0: Global phase coefficient.
        k: Interaction coefficients of ``Σx, Σy, Σz`` after canonicalization.
        left: ``(A1, A0)``, the local factors applied last.
        right: ``(B1, B0)``, the local factors applied first.
        raw_k: Interaction coefficients straight from the phase inversion.
        normalization: Steps taken from ``raw_k`` to ``k``, in order.
        residual: Frobenius norm of ``u - kak_rebuild(self)`` for the source
            matrix, or ``nan`` when built by hand.
    """

    k0: float
    k: np.ndarray
    left: Tuple[np.ndarray, np.ndarray]
    right: Tuple[np.ndarray, np.ndarray]
    raw_k: np.ndarray = None
    normalization: Tuple[str, ...] = ()
    residual: float = float("nan")

    def __post_init__(self):
        k = np.array(self.k, dtype=np.float64).reshape(3)
        k.flags.writeable = False
        object.__setattr__(self, "k0", float(self.k0))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "left", tuple(_frozen(m) for m in self.left))
        object.__setattr__(self, "right", tuple(_frozen(m) for m in self.right))
        raw = k if self.raw_k is None else np.array(self.raw_k, dtype=np.float64).reshape(3)
        object.__setattr__(self, "raw_k", raw)
        object.__setattr__(self, "normalization", tuple(self.normalization))

    @property
    def a1(self) -> np.ndarray:
        return self.left[0]

    @property
    def a0(self) -> np.ndarray:
        return self.left[1]

    @property
    def b1(self) -> np.ndarray:
        return self.right[0]

    @property
    def b0(self) -> np.ndarray:
        return self.right[1]

    def to_json(self) -> dict:
        def flat(m):
            return [[float(z.real), float(z.imag)] for z in m.reshape(-1)]

        return {
            "k0": self.k0,
            "k": self.k.tolist(),
            "A1": flat(self.a1),
            "A0": flat(self.a0),
            "B1": flat(self.b1),
            "B0": flat(self.b0),
            "raw_k": self.raw_k.tolist(),
            "normalization": list(self.normalization),
            "residual": None if np.isnan(self.residual) else self.residual,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "KakFactors":
        def unflat(pairs):
            arr = np.asarray(pairs, dtype=np.float64).reshape(4, 2)
            return (arr[:, 0] + 1j * arr[:, 1]).reshape(2, 2)

        return cls(doc["k0"], doc["k"], (unflat(doc["A1"]), unflat(doc["A0"])),
                   (unflat(doc["B1"]), unflat(doc["B0"])),
                   raw_k=doc.get("raw_k"), normalization=doc.get("normalization", ()))


def _kron2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(4, 4)


def _det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def kak_rebuild(f: KakFactors) -> np.ndarray:
    """``(A1 ⊗ A0) exp(i (k0 + k·Σ)) (B1 ⊗ B0)``."""
    return _kron2(f.a1, f.a0) @ interaction_matrix(f.k0, f.k) @ _kron2(f.b1, f.b0)


def phi_forward(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``M^† (A ⊗ conj(B)) M``, real orthogonal for ``A, B`` in SU(2)."""
    return _MAGIC_H @ _kron2(np.asarray(a), np.conj(b)) @ MAGIC


def _positive_lead(m: np.ndarray) -> bool:
    flat = m.reshape(-1)
    mags = np.abs(flat)
    z = flat[int(np.argmax(mags >= mags.max() - 1e-12))]
    if abs(z.real) > 1e-12:
        return z.real > 0
    return z.imag > 0


def kron_factor(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Splits ``x = A ⊗ C`` into determinant-one 2x2 factors.

    The overall sign is shared so that ``A ⊗ C`` reproduces ``x`` exactly when
    ``x`` is a product of special-unitary factors.
    """
    x4 = np.asarray(x).reshape(2, 2, 2, 2)  # x4[i, k, j, l] = A[i, j] C[k, l]
    i, k, j, l = np.unravel_index(int(np.argmax(np.abs(x4))), x4.shape)
    a = x4[:, k, :, l]
    c = x4[i, :, j, :]
    a = a / np.sqrt(_det2(a))
    c = c / np.sqrt(_det2(c))
    if (a[i, j] * c[k, l] / x4[i, k, j, l]).real < 0:
        c = -c
    return a, c


def phi_inverse(q: np.ndarray, tol: float = DEFAULT_TOL) -> Tuple[np.ndarray, np.ndarray]:
    """Recovers ``(A, B)`` in SU(2) with ``M q M^† = A ⊗ conj(B)``.

    Of the two preimages ``±(A, B)`` the one whose ``A`` has a positive
    largest-magnitude entry is returned (positive real part, or positive
    imaginary part when the real part vanishes).

    Raises:
        NotSpecialOrthogonal: if ``q`` is not in SO(4) within ``tol``.
    """
    q = np.asarray(q)
    if q.shape != (4, 4) or not is_special_orthogonal(q, tol):
        raise NotSpecialOrthogonal("phi_inverse expects a 4x4 special orthogonal matrix")
    a, c = kron_factor(MAGIC @ np.real(q) @ _MAGIC_H)
    if not _positive_lead(a):
        a, c = -a, -c
    return a, np.conj(c)


def _swapper(j: int, k: int) -> np.ndarray:
    # i(σj + σk)/√2 is in SU(2) and exchanges σj and σk under conjugation
    return 1j * (PAULIS[j + 1] + PAULIS[k + 1]) / np.sqrt(2)


def _canonicalize(k0, k, a1, a0, b1, b0):
    k = np.array(k, dtype=np.float64)
    steps = []
    n = int(np.ceil((k0 - np.pi / 2) / np.pi))
    if n:
        k0 -= n * np.pi
        steps.append(f"shift k0 by {-n:+d}pi")
        if n % 2:
            a1 = -a1
    for i in range(3):
        n = int(np.ceil((k[i] - np.pi / 2) / np.pi))
        if n:
            k[i] -= n * np.pi
            steps.append(f"shift k{i + 1} by {-n:+d}pi")
            if n % 2:
                # exp(i pi Σi) = -1
                a1 = -a1
    names = "xyz"
    for _ in range(2):
        for i in range(2):
            if abs(k[i]) < abs(k[i + 1]):
                v = _swapper(i, i + 1)
                vh = v.conj().T
                k[i], k[i + 1] = k[i + 1], k[i]
                a1, a0 = a1 @ vh, a0 @ vh
                b1, b0 = v @ b1, v @ b0
                steps.append(f"swap {names[i]}{names[i + 1]}")
    return k0, k, a1, a0, b1, b0, steps


def kak_decompose(u: np.ndarray, tol: float = DEFAULT_TOL, rng=None) -> KakFactors:
    """Cartan decomposition of a two-qubit unitary.

    Args:
        u: 4x4 unitary matrix; any global phase is absorbed into ``k0``.
        tol: Unitarity and joint-diagonalization tolerance.
        rng: Optional generator for the randomized diagonalization retries.

    Returns:
        A :class:`KakFactors` whose ``k0`` and ``k`` lie in (-π/2, π/2] with
        ``|k1| >= |k2| >= |k3|``.

    Raises:
        NotTwoQubit: if ``u`` is not 4x4.
        NotUnitary: if ``u`` is not unitary within ``tol``.
        DecompositionFailed: if the magic-basis parts cannot be diagonalized.
    """
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (4, 4):
        raise NotTwoQubit(f"expected a 4x4 matrix, got shape {u.shape}")
    if not np.all(np.isfinite(u)) or not is_unitary(u, tol):
        raise NotUnitary("input is not unitary")
    o = _MAGIC_H @ u @ MAGIC
    try:
        jd = joint_orthogonal_diagonalize(o.real, o.imag, tol, rng)
    except NotSimultaneouslyDiagonalizable as exc:
        raise DecompositionFailed(str(exc)) from exc

    theta = np.angle(jd.d_a + 1j * jd.d_b)
    k0, raw_k = k_from_theta(theta)
    a1, a0c = phi_inverse(jd.q_left, max(tol, 1e-8))
    b1, b0c = phi_inverse(jd.q_right.T, max(tol, 1e-8))
    k0, k, a1, a0, b1, b0, steps = _canonicalize(k0, raw_k, a1, np.conj(a0c), b1, np.conj(b0c))

    f = KakFactors(k0, k, (a1, a0), (b1, b0), raw_k=raw_k, normalization=steps)
    residual = float(np.linalg.norm(u - kak_rebuild(f)))
    if residual >= 100 * max(tol, 1e-12):
        raise DecompositionFailed(f"reconstruction residual {residual:.3e}")
    object.__setattr__(f, "residual", residual)
    return f
