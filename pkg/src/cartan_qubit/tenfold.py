"""Tenfold symmetry classes, flattened Hamiltonians and homotopy tables.

A Hermitian matrix is assigned one of the ten Altland-Zirnbauer classes from
the antiunitary symmetries it respects: time reversal ``Θ h Θ^-1 = h``,
particle-hole ``Π h Π^-1 = -h`` and their product, the chiral operator
``S = ΘΠ``. Homotopy data for the stable spaces and for a few finite symmetric
spaces are stored as literal tables.
"""
import enum
from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .entanglement import Antiunitary
from .errors import (GaplessHamiltonian, InconsistentSymmetries, NotHermitian,
                     OutOfTableRange, UnsupportedClass)
from .linalg import DEFAULT_TOL, eig_hermitian, is_hermitian, is_unitary
from .pauli import AXES, PAULIS

GAP_REL = 1e-8


@dataclass(frozen=True)
class HomotopyGroup:
    """An abelian group label: ``0``, ``Z``, ``2Z`` or ``Z_m``.

    Use the module constants and :func:`ZMod`; ``ZMod(2)`` is ``Z2``.
    """

    kind: str
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("0", "Z", "2Z", "Zm"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == "Zm" and (self.m is None or self.m < 2):
            raise ValueError("Z_m needs m >= 2")

    def __str__(self):
        return f"Z{self.m}" if self.kind == "Zm" else self.kind

    @classmethod
    def parse(cls, text: str) -> "HomotopyGroup":
        text = text.strip()
        if text in ("0", "Z", "2Z"):
            return cls(text)
        if text.startswith("Z") and text[1:].isdigit():
            return ZMod(int(text[1:]))
        raise ValueError(f"cannot parse homotopy group {text!r}")


def ZMod(m: int) -> HomotopyGroup:
    return HomotopyGroup("Zm", int(m))


ZERO = HomotopyGroup("0")
Z = HomotopyGroup("Z")
TWO_Z = HomotopyGroup("2Z")
Z2 = ZMod(2)


@dataclass(frozen=True)
class SymmetryClass:
    """A row of the tenfold table.

    ``theta_square`` and ``pi_square`` are +1, -1 or ``None`` when the
    symmetry is absent.
    """

    name: str
    theta_square: Optional[int]
    pi_square: Optional[int]
    chiral: bool

    @property
    def is_complex(self) -> bool:
        return self.name in ("A", "AIII")

    def __str__(self):
        return self.name


class _Row(NamedTuple):
    cls: SymmetryClass
    hamiltonian_space: str
    evolution_space: str
    pi0: HomotopyGroup


def _row(name, theta, pi, chiral, h_space, u_space, pi0):
    return _Row(SymmetryClass(name, theta, pi, chiral), h_space, u_space, pi0)


# class, Θ², Π², S, stable Hamiltonian space, evolution space, π0 of the former
TENFOLD_TABLE: Dict[str, _Row] = {r.cls.name: r for r in (
    _row("A", None, None, False, "C0", "C1", Z),
    _row("AIII", None, None, True, "C1", "C0", ZERO),
    _row("AI", 1, None, False, "R0", "R7", Z),
    _row("BDI", 1, 1, True, "R1", "R0", Z2),
    _row("D", None, 1, False, "R2", "R1", Z2),
    _row("DIII", -1, 1, True, "R3", "R2", ZERO),
    _row("AII", -1, None, False, "R4", "R3", TWO_Z),
    _row("CII", -1, -1, True, "R5", "R4", ZERO),
    _row("C", None, -1, False, "R6", "R5", ZERO),
    _row("CI", 1, -1, True, "R7", "R6", ZERO),
)}

CLASS_NAMES = tuple(TENFOLD_TABLE)
CLASSES: Dict[str, SymmetryClass] = {name: row.cls for name, row in TENFOLD_TABLE.items()}

# Homotopy group relevant in spatial dimension d = 0..3, stable limit
DIMENSION_TABLE: Dict[str, Tuple[HomotopyGroup, ...]] = {
    "A": (Z, ZERO, Z, ZERO),
    "AIII": (ZERO, Z, ZERO, Z),
    "AI": (Z, ZERO, ZERO, ZERO),
    "BDI": (Z2, Z, ZERO, ZERO),
    "D": (Z2, Z2, Z, ZERO),
    "DIII": (ZERO, Z2, Z2, Z),
    "AII": (TWO_Z, ZERO, Z2, Z2),
    "CII": (ZERO, TWO_Z, ZERO, Z2),
    "C": (ZERO, ZERO, TWO_Z, ZERO),
    "CI": (ZERO, ZERO, ZERO, TWO_Z),
}

REAL_ORDER = ("AI", "BDI", "D", "DIII", "AII", "CII", "C", "CI")
COMPLEX_ORDER = ("A", "AIII")


def class_by_name(name: str) -> SymmetryClass:
    try:
        return CLASSES[name]
    except KeyError:
        raise ValueError(f"unknown symmetry class {name!r}") from None


def class_from_symmetries(theta_square: Optional[int], pi_square: Optional[int],
                          chiral: bool) -> SymmetryClass:
    """The unique tenfold-table row with these (Θ², Π², S) entries."""
    for cls in CLASSES.values():
        if (cls.theta_square, cls.pi_square, cls.chiral) == (theta_square, pi_square, chiral):
            return cls
    raise InconsistentSymmetries(
        f"no class with theta^2={theta_square}, pi^2={pi_square}, chiral={chiral}")


def class_index(cls) -> int:
    """Position on the Bott clock: 0..7 for real classes, 0..1 for complex ones."""
    name = str(cls)
    return COMPLEX_ORDER.index(name) if name in COMPLEX_ORDER else REAL_ORDER.index(name)


def stable_pi0(space: str) -> HomotopyGroup:
    """``π0`` of a stable space ``C0, C1, R0 .. R7``."""
    for row in TENFOLD_TABLE.values():
        if row.hamiltonian_space == space:
            return row.pi0
    raise ValueError(f"unknown stable space {space!r}")


def stable_pi(i: int, space: str) -> HomotopyGroup:
    """``π_i`` of a stable space from Bott periodicity, ``π_i(R_j) = π_0(R_{j+i})``."""
    if i < 0:
        raise ValueError("homotopy degree must be non-negative")
    family, j = space[0], int(space[1:])
    period = 2 if family == "C" else 8
    return stable_pi0(f"{family}{(j + i) % period}")


def stable_homotopy(cls, d: int) -> HomotopyGroup:
    """Classifying group in spatial dimension ``d``: ``π_{-d}`` of the stable space.

    The degree ``-d`` is read modulo 8 (real classes) or 2 (complex classes),
    so the entry is ``π0`` of the class ``d`` steps back on the Bott clock.
    """
    name = str(cls)
    s = class_index(name)
    if name in COMPLEX_ORDER:
        return TENFOLD_TABLE[COMPLEX_ORDER[(s - d) % 2]].pi0
    return TENFOLD_TABLE[REAL_ORDER[(s - d) % 8]].pi0


class FiniteSpace(NamedTuple):
    space: str
    variant: str
    description: str
    pi0: object  # callable n -> HomotopyGroup or None
    pi1: object
    even_n: bool
    pi1_min_n: int


def _const(g):
    return lambda n: g


_FINITE: Dict[str, Tuple[FiniteSpace, ...]] = {
    "C0": (
        FiniteSpace("C0", "disjoint", "disjoint union over k of U(n)/(U(n-k) x U(k))",
                    lambda n: ZMod(n + 1), _const(ZERO), False, 1),
        FiniteSpace("C0", "z_times_u", "Z x U(n)/(U(n/2) x U(n/2))",
                    _const(Z), _const(ZERO), True, 1),
        FiniteSpace("C0", "z_times_su", "Z x SU(n)/(SU(n/2) x SU(n/2))",
                    _const(Z), _const(ZERO), True, 1),
    ),
    "R0": (
        FiniteSpace("R0", "disjoint", "disjoint union over k of O(n)/(O(n-k) x O(k))",
                    lambda n: ZMod(n + 1), _const(Z2), False, 4),
        FiniteSpace("R0", "z_times_o", "Z x O(n)/(O(n/2) x O(n/2))",
                    _const(Z), _const(Z2), True, 4),
        FiniteSpace("R0", "z_times_so", "Z x SO(n)/(SO(n/2) x SO(n/2))",
                    _const(Z), _const(ZERO), True, 4),
    ),
    "R7": (
        FiniteSpace("R7", "u_over_o", "U(n)/O(n)", _const(ZERO), _const(Z), False, 3),
        FiniteSpace("R7", "su_over_so", "SU(n)/SO(n)", _const(ZERO), _const(ZERO), False, 3),
        FiniteSpace("R7", "u_over_so", "U(n)/SO(n)", _const(ZERO), _const(Z), False, 3),
        # alternative version whose π1 is Z_n; π0 is not stated for it
        FiniteSpace("R7", "alt_zn", "alternative R7(n)", _const(None),
                    lambda n: ZMod(n) if n >= 2 else ZERO, False, 3),
    ),
}


def finite_variants(space: str) -> Tuple[FiniteSpace, ...]:
    try:
        return _FINITE[space]
    except KeyError:
        raise OutOfTableRange(f"no finite table for space {space!r}") from None


def finite_homotopy(space: str, variant, n: int) -> Tuple[Optional[HomotopyGroup], HomotopyGroup]:
    """``(π0, π1)`` of a finite symmetric space.

    Args:
        space: ``"C0"``, ``"R0"`` or ``"R7"``.
        variant: Variant name or its index within the space.
        n: Matrix size.

    Raises:
        OutOfTableRange: for unknown spaces or variants, odd ``n`` on the
            ``n/2`` variants, or ``n`` below the validity range of ``π1``
            (``n >= 3`` for R7, ``n >= 4`` for R0).
    """
    variants = finite_variants(space)
    if isinstance(variant, (int, np.integer)):
        if not 0 <= variant < len(variants):
            raise OutOfTableRange(f"{space} has variants 0..{len(variants) - 1}")
        entry = variants[int(variant)]
    else:
        matches = [v for v in variants if v.variant == variant]
        if not matches:
            raise OutOfTableRange(
                f"unknown variant {variant!r} for {space}; "
                f"use one of {[v.variant for v in variants]}")
        entry = matches[0]
    n = int(n)
    if n < entry.pi1_min_n:
        raise OutOfTableRange(f"{space} table applies for n >= {entry.pi1_min_n}")
    if entry.even_n and n % 2:
        raise OutOfTableRange(f"variant {entry.variant} needs even n")
    return entry.pi0(n), entry.pi1(n)


class Symmetry(enum.Enum):
    TIME_REVERSAL = "time_reversal"
    PARTICLE_HOLE = "particle_hole"


def _check_h(h, tol) -> np.ndarray:
    h = np.asarray(h, dtype=np.complex128)
    if not is_hermitian(h, tol):
        raise NotHermitian("Hamiltonian must be Hermitian")
    return h


def detect_symmetry(h: np.ndarray, candidate: Antiunitary,
                    tol: float = DEFAULT_TOL) -> Optional[Symmetry]:
    """How ``h`` transforms under ``candidate``: ``u conj(h) u^† = ±h``.

    Returns ``TIME_REVERSAL`` for ``+h``, ``PARTICLE_HOLE`` for ``-h`` and
    ``None`` otherwise. The zero matrix reports ``TIME_REVERSAL``.
    """
    h = np.asarray(h, dtype=np.complex128)
    if candidate.dim != h.shape[0]:
        raise ValueError("candidate dimension does not match the Hamiltonian")
    hc = candidate.conjugate(h)
    scale = tol * max(1.0, float(np.linalg.norm(h)))
    if np.linalg.norm(hc - h) < scale:
        return Symmetry.TIME_REVERSAL
    if np.linalg.norm(hc + h) < scale:
        return Symmetry.PARTICLE_HOLE
    return None


def anticommutes(h: np.ndarray, s: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Chiral test ``||S h S^† + h|| < tol`` (scaled by ``||h||``)."""
    h = np.asarray(h)
    s = np.asarray(s)
    return bool(np.linalg.norm(s @ h @ s.conj().T + h) < tol * max(1.0, float(np.linalg.norm(h))))


def classify(h: np.ndarray, theta: Optional[Antiunitary] = None,
             pi: Optional[Antiunitary] = None, tol: float = DEFAULT_TOL,
             chiral: Optional[np.ndarray] = None) -> SymmetryClass:
    """Assigns the tenfold class of ``h`` given candidate symmetries.

    A candidate that ``h`` does not respect (time reversal for ``theta``,
    particle-hole for ``pi``) is treated as absent. With both present the
    chiral operator ``S = ΘΠ`` must anticommute with ``h``. With neither, an
    optional unitary ``chiral`` is tested directly and yields AIII on success.

    Raises:
        NotHermitian: if ``h`` is not Hermitian.
        InconsistentSymmetries: if both symmetries hold but ``S`` fails.
    """
    h = _check_h(h, tol)
    t_sq = p_sq = None
    if theta is not None and detect_symmetry(h, theta, tol) is Symmetry.TIME_REVERSAL:
        t_sq = theta.square
    if pi is not None and detect_symmetry(h, pi, tol) is Symmetry.PARTICLE_HOLE:
        p_sq = pi.square
    if t_sq is not None and p_sq is not None:
        if not anticommutes(h, theta.compose(pi), tol):
            raise InconsistentSymmetries("S = ΘΠ does not anticommute with h")
        return class_from_symmetries(t_sq, p_sq, True)
    if t_sq is None and p_sq is None and chiral is not None:
        chiral = np.asarray(chiral, dtype=np.complex128)
        if is_unitary(chiral, tol) and anticommutes(h, chiral, tol):
            return CLASSES["AIII"]
    return class_from_symmetries(t_sq, p_sq, False)


def pauli_candidates(h: np.ndarray, tol: float = DEFAULT_TOL) -> List[Tuple[str, Antiunitary, Symmetry]]:
    """Searches the 16 antiunitaries ``(σi⊗σj)K`` for symmetries of a 4x4 ``h``.

    Returns:
        ``(label, antiunitary, symmetry)`` for each Pauli string that ``h``
        respects, with labels such as ``"yy"`` or ``"1z"``.
    """
    h = _check_h(h, tol)
    if h.shape != (4, 4):
        raise ValueError("Pauli-string search is defined for two-qubit Hamiltonians")
    names = "1" + AXES
    found = []
    for i, p in enumerate(PAULIS):
        for j, q in enumerate(PAULIS):
            cand = Antiunitary.from_unitary(np.kron(p, q))
            sym = detect_symmetry(h, cand, tol)
            if sym is not None:
                found.append((names[i] + names[j], cand, sym))
    return found


class FlattenResult(NamedTuple):
    k_negative: int
    flattened: np.ndarray
    gap: float


def flatten(h: np.ndarray, gap_tol: Optional[float] = None,
            tol: float = DEFAULT_TOL) -> FlattenResult:
    """``sign(h)`` through the eigendecomposition, with its negative count.

    Args:
        h: Hermitian matrix.
        gap_tol: Smallest admissible ``|eigenvalue|``; ``1e-8 ||h||`` by default.
        tol: Hermiticity tolerance.

    Raises:
        GaplessHamiltonian: if an eigenvalue lies within ``gap_tol`` of zero.
    """
    h = np.asarray(h, dtype=np.complex128)
    w, v = eig_hermitian(h, tol)
    if gap_tol is None:
        gap_tol = GAP_REL * float(np.linalg.norm(h))
    gap = float(np.min(np.abs(w)))
    if gap <= gap_tol:
        raise GaplessHamiltonian(f"eigenvalue {gap:.3e} within gap_tol {gap_tol:.3e} of zero")
    signs = np.sign(w)
    return FlattenResult(int(np.sum(w < 0)), (v * signs) @ v.conj().T, gap)


def signature_invariant(h: np.ndarray, cls, gap_tol: Optional[float] = None) -> int:
    """Component index ``k`` (negative eigenvalue count) of the Grassmannian.

    Defined for classes A and AI, whose finite Hamiltonian spaces are
    disjoint unions over ``k``.

    Raises:
        UnsupportedClass: for any other class.
        GaplessHamiltonian: at a phase boundary.
    """
    if str(cls) not in ("A", "AI"):
        raise UnsupportedClass(f"no finite pi0 construction for class {cls}")
    return flatten(h, gap_tol).k_negative


@dataclass(frozen=True)
class CliffordSignature:
    """Clifford bookkeeping for generators of ``Cl_{q+1,p}``.

    ``d`` is ``None`` when ``p + q`` is odd and the dimension is not an integer.
    """

    p: int
    q: int
    w: int
    s: int
    d: Optional[int]


def clifford_signature(p: int, q: int) -> CliffordSignature:
    """Matrix size ``w``, class index ``s = p - q (mod 8)`` and dimension ``d = (p+q)/2``."""
    p, q = int(p), int(q)
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    total = p + q
    w = 2 ** (total // 2) if total % 2 == 0 else 2 ** ((total + 1) // 2)
    d = total // 2 if total % 2 == 0 else None
    return CliffordSignature(p, q, w, (p - q) % 8, d)
