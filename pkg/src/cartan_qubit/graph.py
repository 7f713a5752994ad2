"""The canonical class-AI interaction as a four-site graph.

``H_AI = α σx⊗σx + β σy⊗σy + γ σz⊗σz`` preserves the parity of the two spins,
so in the site order ``(a1, a2, b1, b2) = (|00>, |11>, |01>, |10>)`` it splits
into two dimers::

    [[γ, α-β], [α-β, γ]]  ⊕  [[-γ, α+β], [α+β, -γ]]

Each dimer has a two-point symbol ``h(k)`` with ``k ∈ {0, π}``. The invariants
are half the sum of its signs, oriented so that every zero crossing raises
``ν = ν1 + ν2`` by one as ``γ`` increases.
"""
import io
import math
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from . import _backend
from .entanglement import PureState, bell_state
from .errors import GaplessSymbol
from .pauli import PauliDecomposition, h_ai

BOUNDARY_REL = 1e-8
K_POINTS = (0.0, math.pi)
LINE_LABELS = ("1+", "1-", "2+", "2-")
BELL_NAMES = {"1+": "|1,+>", "1-": "|1,->", "2+": "|2,+>", "2-": "|2,->"}

# computational index of each graph site a1, a2, b1, b2
SITE_ORDER = (0, 3, 1, 2)
# PERMUTATION @ psi_computational = psi_sites
PERMUTATION = np.eye(4)[list(SITE_ORDER)]
PERMUTATION.flags.writeable = False


@dataclass(frozen=True)
class GraphParams:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)

    def to_pauli(self) -> PauliDecomposition:
        return h_ai(self.alpha, self.beta, self.gamma)

    def boundary_tol(self, rel: float = BOUNDARY_REL) -> float:
        return rel * max(abs(self.alpha) + abs(self.beta) + abs(self.gamma), 1.0)


def graph_hamiltonian(p: GraphParams) -> np.ndarray:
    """Tight-binding matrix in site order ``(a1, a2, b1, b2)``."""
    t1 = p.alpha - p.beta
    t2 = p.alpha + p.beta
    return np.array([
        [p.gamma, t1, 0.0, 0.0],
        [t1, p.gamma, 0.0, 0.0],
        [0.0, 0.0, -p.gamma, t2],
        [0.0, 0.0, t2, -p.gamma],
    ])


def sites_to_computational(m: np.ndarray) -> np.ndarray:
    """Re-expresses a site-ordered operator in the computational basis."""
    return PERMUTATION.T @ np.asarray(m) @ PERMUTATION


def nu_hamiltonian(p: GraphParams) -> np.ndarray:
    """Site-ordered ``h1 ⊕ (-h2)``, whose signature is ``2ν``.

    In the computational basis this is ``(σz⊗σz) H_AI = γ 1 - β σx⊗σx - α σy⊗σy``,
    again a time-reversal-symmetric two-qubit Hamiltonian. Its negative
    eigenvalue count ``k`` satisfies ``ν = 2 - k``.
    """
    m = graph_hamiltonian(p)
    m[2:, 2:] *= -1
    return m


@dataclass(frozen=True)
class SymbolBlocks:
    """Values of the two dimer symbols at ``k = 0`` and ``k = π``."""

    h1: Dict[float, float]
    h2: Dict[float, float]

    def matrix(self, k: float) -> np.ndarray:
        return np.diag([self.h1[k], self.h2[k]])


def weyl_symbol(p: GraphParams) -> SymbolBlocks:
    """``h1(k) = γ + (α-β) cos k``, ``h2(k) = -γ + (α+β) cos k``."""
    t1 = p.alpha - p.beta
    t2 = p.alpha + p.beta
    # cos 0 = 1 and cos π = -1 exactly
    return SymbolBlocks(
        h1={K_POINTS[0]: p.gamma + t1, K_POINTS[1]: p.gamma - t1},
        h2={K_POINTS[0]: -p.gamma + t2, K_POINTS[1]: -p.gamma - t2},
    )


class SpectralLine(NamedTuple):
    label: str
    energy: float
    state: PureState


def spectrum(p: GraphParams) -> List[SpectralLine]:
    """``λ1± = γ ± (α-β)`` on ``|1,±>`` and ``λ2± = -γ ± (α+β)`` on ``|2,±>``."""
    energies = (p.gamma + (p.alpha - p.beta), p.gamma - (p.alpha - p.beta),
                -p.gamma + (p.alpha + p.beta), -p.gamma - (p.alpha + p.beta))
    return [SpectralLine(label, e, bell_state(label)) for label, e in zip(LINE_LABELS, energies)]


@dataclass(frozen=True)
class InvariantReport:
    nu1: int
    nu2: int
    nu: int
    spectrum: Dict[str, float]
    zero_modes: Tuple[Tuple[str, str], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "nu1": self.nu1,
            "nu2": self.nu2,
            "nu": self.nu,
            "spectrum": dict(self.spectrum),
            "zero_modes": [list(z) for z in self.zero_modes],
        }


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def invariant_nu(p: GraphParams, rel_tol: float = BOUNDARY_REL) -> InvariantReport:
    """Block invariants ``ν1 = ½ Σ_k sign h1(k)`` and ``ν2 = -½ Σ_k sign h2(k)``.

    Raises:
        GaplessSymbol: if a symbol value lies within the boundary tolerance of
            zero, i.e. at a phase transition.
    """
    sym = weyl_symbol(p)
    tol = p.boundary_tol(rel_tol)
    values = list(sym.h1.values()) + list(sym.h2.values())
    if min(abs(v) for v in values) <= tol:
        raise GaplessSymbol(f"symbol vanishes at {p}")
    nu1 = sum(_sign(v) for v in sym.h1.values()) // 2
    nu2 = -sum(_sign(v) for v in sym.h2.values()) // 2
    lines = {line.label: line.energy for line in spectrum(p)}
    return InvariantReport(nu1, nu2, nu1 + nu2, lines)


def crossing_points(alpha: float, beta: float) -> Dict[str, float]:
    """Closed-form ``γ`` at which each spectral line vanishes."""
    return {"1+": -(alpha - beta), "1-": alpha - beta, "2+": alpha + beta, "2-": -(alpha + beta)}


BOUNDARY = "boundary"


@dataclass(frozen=True, eq=False)
class PhaseScan:
    """Dense scan along ``γ``; row ``i`` belongs to ``gamma[i]``.

    ``lam`` columns follow :data:`LINE_LABELS`. On boundary rows the
    invariants are undefined and stored as 0. ``zero_modes[i]`` lists lines
    that vanish at row ``i`` or changed sign since row ``i - 1``.
    """

    alpha: float
    beta: float
    gamma: np.ndarray
    lam: np.ndarray
    nu1: np.ndarray
    nu2: np.ndarray
    boundary: np.ndarray
    zero_modes: Tuple[Tuple[str, ...], ...]

    @property
    def nu(self) -> np.ndarray:
        return self.nu1.astype(np.int64) + self.nu2

    def rows(self) -> List[tuple]:
        """``(γ, ν or BOUNDARY, zero-mode labels)`` per grid point."""
        nu = self.nu
        return [(float(g), BOUNDARY if b else int(n), z)
                for g, n, b, z in zip(self.gamma, nu, self.boundary, self.zero_modes)]

    def report(self, i: int) -> InvariantReport:
        lines = dict(zip(LINE_LABELS, (float(x) for x in self.lam[i])))
        modes = tuple((label, BELL_NAMES[label]) for label in self.zero_modes[i])
        return InvariantReport(int(self.nu1[i]), int(self.nu2[i]), int(self.nu[i]), lines, modes)

    def crossings(self) -> List[Tuple[str, float]]:
        """Zero crossings of every line, located by linear interpolation.

        The lines are linear in ``γ`` so interpolation between the bracketing
        grid points is exact up to rounding.
        """
        out = []
        g = self.gamma
        for j, label in enumerate(LINE_LABELS):
            y = self.lam[:, j]
            for i in range(len(g)):
                if y[i] == 0.0:
                    out.append((label, float(g[i])))
                elif i + 1 < len(g) and y[i] * y[i + 1] < 0:
                    out.append((label, float(g[i] - y[i] * (g[i + 1] - g[i]) / (y[i + 1] - y[i]))))
        return sorted(out, key=lambda c: (c[1], c[0]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("gamma,lambda_1_plus,lambda_1_minus,lambda_2_plus,lambda_2_minus,"
                  "nu1,nu2,nu,boundary_flag,zero_mode_labels\n")
        nu = self.nu
        for i in range(len(self.gamma)):
            cells = [repr(float(self.gamma[i]))]
            cells += [repr(float(x)) for x in self.lam[i]]
            cells += [str(int(self.nu1[i])), str(int(self.nu2[i])), str(int(nu[i])),
                      str(int(self.boundary[i])), ";".join(self.zero_modes[i])]
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def phase_scan(alpha: float, beta: float, gamma_grid: Sequence[float],
               rel_tol: float = BOUNDARY_REL) -> PhaseScan:
    """Spectrum and invariants at every ``γ`` of ``gamma_grid``, in input order."""
    g = np.ascontiguousarray(gamma_grid, dtype=np.float64).reshape(-1)
    if not np.all(np.isfinite(g)):
        raise ValueError("gamma grid must be finite")
    GraphParams(alpha, beta, 0.0)
    lam, nu1, nu2, bnd = _backend.kernels.graph_scan(float(alpha), float(beta), g, float(rel_tol))
    bnd = bnd.astype(bool)
    tol = rel_tol * np.maximum(abs(alpha) + abs(beta) + np.abs(g), 1.0)
    at_zero = np.abs(lam) <= tol[:, None]
    flipped = np.zeros_like(at_zero)
    if len(g) > 1:
        flipped[1:] = lam[1:] * lam[:-1] < 0
    marks = at_zero | flipped
    modes = tuple(tuple(LINE_LABELS[j] for j in np.flatnonzero(row)) for row in marks)
    return PhaseScan(float(alpha), float(beta), g, lam, nu1, nu2, bnd, modes)
