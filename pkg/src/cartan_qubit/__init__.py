"""Two-qubit Cartan decomposition, concurrence and topological classification."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .entanglement import (MAGIC, Antiunitary, PureState, bell_state, concurrence,
                           concurrence_trajectory, magic_basis_transform,
                           make_kane_mele_theta, make_particle_hole_2fermion,
                           make_time_reversal_2q)
from .errors import *  # noqa: F401,F403
from .graph import (GraphParams, InvariantReport, PhaseScan, SymbolBlocks, graph_hamiltonian,
                    invariant_nu, phase_scan, spectrum, weyl_symbol)
from .kak import KakFactors, kak_decompose, kak_rebuild, phi_forward, phi_inverse
from .linalg import (EigenSystem, dagger, eig_hermitian, expm_i, is_hermitian, is_orthogonal,
                     is_real, is_unitary, joint_orthogonal_diagonalize, tensor)
from .pauli import (CartanSplit, PauliDecomposition, Sector, cartan_split, from_matrix, h_ai,
                    is_local_hamiltonian, theta_conjugation_check)
from .tenfold import (CliffordSignature, FlattenResult, HomotopyGroup, SymmetryClass, Symmetry,
                      classify, clifford_signature, detect_symmetry, finite_homotopy, flatten,
                      signature_invariant, stable_homotopy)
