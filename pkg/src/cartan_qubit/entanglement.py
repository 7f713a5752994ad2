"""Antiunitary operators, the magic basis and concurrence.

An antiunitary ``Θ = uK`` acts on a state vector as ``ψ ↦ u conj(ψ)`` in the
computational basis. For a pure state the associated concurrence is
``|<ψ|Θ|ψ>| = |ψ^† u conj(ψ)|``.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .errors import InvalidAntiunitary, NotNormalized, NotTwoQubit
from .linalg import DEFAULT_TOL, eig_hermitian, is_unitary, tensor
from .pauli import I2, SY, PauliDecomposition

NORM_TOL = 1e-12

_S = 1 / np.sqrt(2)
MAGIC = _S * np.array([
    [1, 0, 0, 1j],
    [0, 1j, 1, 0],
    [0, 1j, -1, 0],
    [1, 0, 0, -1j],
], dtype=np.complex128)
MAGIC.flags.writeable = False


def magic_basis_transform(m: np.ndarray) -> np.ndarray:
    """Returns ``M^† m M``, the matrix ``m`` expressed in the magic basis.

    Raises:
        NotTwoQubit: if ``m`` is not 4x4.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (4, 4):
        raise NotTwoQubit(f"expected a 4x4 matrix, got shape {m.shape}")
    return MAGIC.conj().T @ m @ MAGIC


@dataclass(frozen=True, eq=False)
class Antiunitary:
    """``Θ = uK`` with ``K`` complex conjugation in the computational basis.

    Attributes:
        u: Unitary part.
        square: ``Θ² = u conj(u)``, either +1 or -1.
    """

    u: np.ndarray
    square: int

    @classmethod
    def from_unitary(cls, u, tol: float = DEFAULT_TOL) -> "Antiunitary":
        """Validates ``u`` and caches the square of the antiunitary.

        Raises:
            InvalidAntiunitary: if ``u`` is not unitary or ``u conj(u) != ±1``.
        """
        u = np.array(u, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1] or not np.all(np.isfinite(u)):
            raise InvalidAntiunitary("unitary part must be a finite square matrix")
        if not is_unitary(u, tol):
            raise InvalidAntiunitary("unitary part is not unitary")
        sq = u @ u.conj()
        eye = np.eye(u.shape[0])
        if np.abs(sq - eye).max() <= tol:
            square = 1
        elif np.abs(sq + eye).max() <= tol:
            square = -1
        else:
            raise InvalidAntiunitary("antiunitary does not square to +1 or -1")
        u.flags.writeable = False
        return cls(u, square)

    @property
    def dim(self) -> int:
        return self.u.shape[0]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        return self.u @ np.conj(psi)

    def conjugate(self, m: np.ndarray) -> np.ndarray:
        """``Θ m Θ^-1 = u conj(m) u^†``."""
        return self.u @ np.conj(m) @ self.u.conj().T

    def in_basis(self, v: np.ndarray) -> "Antiunitary":
        """The same operator after the change of basis ``ψ ↦ V ψ``.

        ``V Θ V^† = (V u V^T) K``.
        """
        v = np.asarray(v, dtype=np.complex128)
        return Antiunitary.from_unitary(v @ self.u @ v.T)

    def compose(self, other: "Antiunitary") -> np.ndarray:
        """Unitary part of ``self · other`` (antiunitary times antiunitary)."""
        return self.u @ other.u.conj()

    def __repr__(self):
        return f"Antiunitary(dim={self.dim}, square={self.square:+d})"


def make_time_reversal_2q() -> Antiunitary:
    """Wootters time reversal ``(σy⊗σy)K`` on two spin-1/2s; squares to +1."""
    return Antiunitary.from_unitary(np.kron(SY, SY))


def make_kane_mele_theta() -> Antiunitary:
    """``(1⊗iσy)K`` on a 4-level system; squares to -1."""
    return Antiunitary.from_unitary(tensor(I2, 1j * SY))


# two fermions in four modes: basis e_i ^ e_j ordered 12, 13, 14, 23, 24, 34
PAIR_LABELS = ("12", "13", "14", "23", "24", "34")


def make_particle_hole_2fermion() -> Antiunitary:
    """Particle-hole ``Π = uK`` for two fermions in four modes.

    ``u`` is the Hodge dual on the antisymmetric pair space,
    ``e_i^e_j ↦ ε_ijkl e_k^e_l``; it is real, symmetric and squares to +1.
    """
    u = np.zeros((6, 6))
    index = {label: n for n, label in enumerate(PAIR_LABELS)}
    for label in PAIR_LABELS:
        i, j = int(label[0]), int(label[1])
        k, l = sorted({1, 2, 3, 4} - {i, j})
        perm = (i, j, k, l)
        inversions = sum(perm[x] > perm[y] for x in range(4) for y in range(x + 1, 4))
        u[index[f"{k}{l}"], index[label]] = (-1) ** inversions
    return Antiunitary.from_unitary(u)


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector (four amplitudes for two qubits)."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size == 0 or not np.all(np.isfinite(amps)):
            raise NotNormalized("state must have finite amplitudes")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm {np.linalg.norm(amps):.15g} differs from 1")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, amps) -> "PureState":
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(amps)
        if not np.isfinite(norm) or norm == 0:
            raise NotNormalized("cannot normalize a zero or non-finite vector")
        return cls(amps / norm)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def to_json(self) -> dict:
        return {"re": self.amplitudes.real.tolist(), "im": self.amplitudes.imag.tolist()}


_BELL = {
    "1+": (0, 3, 1),
    "1-": (0, 3, -1),
    "2+": (1, 2, 1),
    "2-": (1, 2, -1),
}


def bell_state(label: str) -> PureState:
    """``|1,±> = (|00> ± |11>)/√2`` and ``|2,±> = (|01> ± |10>)/√2``."""
    try:
        i, j, s = _BELL[label]
    except KeyError:
        raise ValueError(f"unknown Bell label {label!r}; use one of {sorted(_BELL)}") from None
    amps = np.zeros(4, dtype=np.complex128)
    amps[i] = _S
    amps[j] = s * _S
    return PureState(amps)


def _check_dims(dim: int, theta: Antiunitary):
    if dim != theta.dim:
        raise ValueError(f"state dimension {dim} does not match antiunitary dimension {theta.dim}")


def concurrence(psi: PureState, theta: Optional[Antiunitary] = None) -> float:
    """``|ψ^† u conj(ψ)|``; Wootters time reversal when ``theta`` is omitted."""
    theta = make_time_reversal_2q() if theta is None else theta
    _check_dims(psi.dim, theta)
    amps = psi.amplitudes
    return float(abs(np.vdot(amps, theta.u @ amps.conj())))


def evolve_states(psi0: PureState, h, times: Sequence[float],
                  tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rows ``exp(-i h t) ψ0`` for each ``t`` in ``times``."""
    hm = h.to_matrix() if isinstance(h, PauliDecomposition) else np.asarray(h)
    w, v = eig_hermitian(hm, tol)
    times = np.asarray(times, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(times)):
        raise ValueError("times must be finite")
    coeffs = v.conj().T @ psi0.amplitudes
    phases = np.exp(-1j * np.outer(times, w))
    return (phases * coeffs) @ v.T


def concurrence_trajectory(psi0: PureState, h, theta: Optional[Antiunitary] = None,
                           times: Sequence[float] = (), tol: float = DEFAULT_TOL) -> np.ndarray:
    """Concurrence of ``exp(-i h t) ψ0`` along ``times``.

    Args:
        psi0: Initial state.
        h: :class:`PauliDecomposition` or Hermitian matrix.
        theta: Antiunitary defining the concurrence; Wootters by default.
        times: Evaluation times.
        tol: Hermiticity tolerance for ``h``.
    """
    theta = make_time_reversal_2q() if theta is None else theta
    _check_dims(psi0.dim, theta)
    states = evolve_states(psi0, h, times, tol)
    return _backend.kernels.concurrence_batch(states, theta.u)
