"""Two-qubit Hamiltonians in the Pauli product basis and their Cartan split.

A Hamiltonian is written as::

    H = t0 1⊗1 + a_i σ_i⊗1 + b_j 1⊗σ_j + t_ij σ_i⊗σ_j

with σ_1, σ_2, σ_3 = σx, σy, σz and the computational basis ordered
|00>, |01>, |10>, |11> (first qubit most significant). The local sector
(``a``, ``b``) cannot entangle; the ``t`` sector can.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import NotHermitian, NotTwoQubit
from .linalg import DEFAULT_TOL, is_hermitian

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (I2, SX, SY, SZ)
AXES = "xyz"

# PAULI_PRODUCTS[m, n] = σ_m ⊗ σ_n, index 0 is the identity
PAULI_PRODUCTS = np.array([[np.kron(p, q) for q in PAULIS] for p in PAULIS])


def _vec3(x) -> np.ndarray:
    arr = np.array(x, dtype=np.float64).reshape(3)
    arr.flags.writeable = False
    return arr


def _mat3(x) -> np.ndarray:
    arr = np.array(x, dtype=np.float64).reshape(3, 3)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class PauliDecomposition:
    """The 16 real coefficients of a two-qubit Hamiltonian."""

    t0: float = 0.0
    a: np.ndarray = field(default_factory=lambda: np.zeros(3))
    b: np.ndarray = field(default_factory=lambda: np.zeros(3))
    t: np.ndarray = field(default_factory=lambda: np.zeros((3, 3)))

    def __post_init__(self):
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "a", _vec3(self.a))
        object.__setattr__(self, "b", _vec3(self.b))
        object.__setattr__(self, "t", _mat3(self.t))

    @classmethod
    def from_coefficients(cls, c: np.ndarray) -> "PauliDecomposition":
        """Builds from a 4x4 array ``c[m, n]`` multiplying ``σ_m ⊗ σ_n``."""
        c = np.asarray(c, dtype=np.float64).reshape(4, 4)
        return cls(c[0, 0], c[1:, 0], c[0, 1:], c[1:, 1:])

    def coefficients(self) -> np.ndarray:
        c = np.zeros((4, 4))
        c[0, 0] = self.t0
        c[1:, 0] = self.a
        c[0, 1:] = self.b
        c[1:, 1:] = self.t
        return c

    def to_matrix(self) -> np.ndarray:
        return np.tensordot(self.coefficients(), PAULI_PRODUCTS, axes=([0, 1], [0, 1]))

    def __add__(self, other: "PauliDecomposition") -> "PauliDecomposition":
        return PauliDecomposition.from_coefficients(self.coefficients() + other.coefficients())

    def __sub__(self, other: "PauliDecomposition") -> "PauliDecomposition":
        return PauliDecomposition.from_coefficients(self.coefficients() - other.coefficients())

    def __mul__(self, s: float) -> "PauliDecomposition":
        return PauliDecomposition.from_coefficients(self.coefficients() * float(s))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PauliDecomposition):
            return NotImplemented
        return bool(np.array_equal(self.coefficients(), other.coefficients()))

    def allclose(self, other: "PauliDecomposition", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.coefficients(), other.coefficients(), rtol=0, atol=atol))

    def to_json(self) -> dict:
        return {"t0": self.t0, "a": self.a.tolist(), "b": self.b.tolist(),
                "t": self.t.tolist()}

    @classmethod
    def from_json(cls, doc: dict) -> "PauliDecomposition":
        try:
            return cls(doc.get("t0", 0.0), doc.get("a", [0.0] * 3),
                       doc.get("b", [0.0] * 3), doc.get("t", [[0.0] * 3] * 3))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed Pauli decomposition: {exc}") from exc


def from_matrix(h: np.ndarray, tol: float = DEFAULT_TOL) -> PauliDecomposition:
    """Projects a Hermitian 4x4 matrix onto the Pauli products, ``Tr(h P) / 4``.

    Raises:
        NotTwoQubit: if ``h`` is not 4x4.
        NotHermitian: if ``h`` is not Hermitian within ``tol``.
    """
    h = np.asarray(h, dtype=np.complex128)
    if h.shape != (4, 4):
        raise NotTwoQubit(f"expected a 4x4 matrix, got shape {h.shape}")
    if not is_hermitian(h, tol):
        raise NotHermitian("two-qubit Hamiltonian must be Hermitian")
    # Tr(h P) = sum_ij h_ij P_ji
    c = np.einsum("ij,mnji->mn", h, PAULI_PRODUCTS) / 4.0
    return PauliDecomposition.from_coefficients(c.real)


def h_ai(alpha: float, beta: float, gamma: float) -> PauliDecomposition:
    """Canonical interaction ``α σx⊗σx + β σy⊗σy + γ σz⊗σz``."""
    return PauliDecomposition(t=np.diag([alpha, beta, gamma]))


@dataclass(frozen=True)
class CartanSplit:
    h_part: PauliDecomposition
    p_part: PauliDecomposition
    trace_part: float

    def reconstruct(self) -> PauliDecomposition:
        return self.h_part + self.p_part + PauliDecomposition(t0=self.trace_part)


def cartan_split(p: PauliDecomposition) -> CartanSplit:
    """Separates local (single-qubit), entangling and identity parts."""
    return CartanSplit(
        h_part=PauliDecomposition(a=p.a, b=p.b),
        p_part=PauliDecomposition(t=p.t),
        trace_part=p.t0,
    )


def is_local_hamiltonian(p: PauliDecomposition, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.abs(p.t).max() < tol)


class Sector(enum.Enum):
    COMMUTING = "commuting"
    ANTICOMMUTING = "anticommuting"
    MIXED = "mixed"


def theta_conjugation_check(p, theta, tol: float = DEFAULT_TOL) -> Sector:
    """Classifies the generator ``iH`` under conjugation by an antiunitary.

    ``COMMUTING`` means ``Θ (iH) Θ^-1 = iH``, equivalently
    ``e^{iHt} Θ = Θ e^{iHt}``; ``ANTICOMMUTING`` means ``Θ (iH) Θ^-1 = -iH``.
    Because Θ conjugates ``i``, this is the opposite sign of ``Θ H Θ^-1 = ±H``
    on the Hamiltonian itself.

    Args:
        p: A :class:`PauliDecomposition` or a Hermitian matrix.
        theta: An :class:`~cartan_qubit.entanglement.Antiunitary`.
        tol: Frobenius-norm threshold.
    """
    h = p.to_matrix() if isinstance(p, PauliDecomposition) else np.asarray(p)
    g = 1j * h
    g_conj = theta.conjugate(g)
    scale = max(1.0, float(np.linalg.norm(h)))
    if np.linalg.norm(g_conj - g) < tol * scale:
        return Sector.COMMUTING
    if np.linalg.norm(g_conj + g) < tol * scale:
        return Sector.ANTICOMMUTING
    return Sector.MIXED
