"""JSON helpers shared by the command-line front end.

Complex arrays are written as separate real and imaginary parts,
``{"re": [...], "im": [...]}``, so no complex-literal parsing is needed.
"""
import json
import os
import sys
from typing import Any, List, Tuple

import numpy as np

from .entanglement import PureState
from .errors import InputError, NotNormalized
from .pauli import PauliDecomposition, from_matrix

AUTO_NORMALIZE_TOL = 1e-9


def load_json_arg(arg: str) -> Any:
    """Parses inline JSON, ``-`` for stdin, or a path to a JSON file."""
    try:
        if arg == "-":
            return json.load(sys.stdin)
        if arg.lstrip().startswith(("{", "[")):
            return json.loads(arg)
        if not os.path.exists(arg):
            raise InputError(f"no such file: {arg}")
        with open(arg, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def complex_array_from_json(doc: Any, ndim: int) -> np.ndarray:
    if not isinstance(doc, dict) or "re" not in doc:
        raise InputError('expected an object with "re" (and optionally "im") arrays')
    try:
        re = np.asarray(doc["re"], dtype=np.float64)
        im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed numeric array: {exc}") from exc
    if re.shape != im.shape or re.ndim != ndim:
        raise InputError(f"re/im must be matching {ndim}-dimensional arrays")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise InputError("array entries must be finite")
    return re + 1j * im


def complex_array_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {"re": a.real.tolist(), "im": a.imag.tolist()}


def matrix_from_json(doc: Any) -> np.ndarray:
    m = complex_array_from_json(doc, 2)
    if m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    return m


def state_from_json(doc: Any, tol: float = AUTO_NORMALIZE_TOL) -> Tuple[PureState, List[str]]:
    """Reads a state, rescaling it to unit norm if it is off by more than ``tol``."""
    amps = complex_array_from_json(doc, 1)
    norm = float(np.linalg.norm(amps))
    if norm == 0.0:
        raise NotNormalized("state vector is zero")
    diagnostics = []
    if abs(norm - 1.0) > tol:
        diagnostics.append(f"state norm {norm:.12g} != 1; normalized")
    return PureState(amps / norm), diagnostics


def hamiltonian_from_json(doc: Any, tol: float) -> np.ndarray:
    """Accepts either a Pauli decomposition or an explicit matrix."""
    if isinstance(doc, dict) and "re" in doc:
        return matrix_from_json(doc)
    if isinstance(doc, dict) and set(doc) & {"t0", "a", "b", "t"}:
        try:
            return PauliDecomposition.from_json(doc).to_matrix()
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    raise InputError('expected a Pauli decomposition {"t0","a","b","t"} or a matrix {"re","im"}')


def pauli_from_json(doc: Any, tol: float) -> PauliDecomposition:
    if isinstance(doc, dict) and "re" in doc:
        return from_matrix(matrix_from_json(doc), tol)
    if not isinstance(doc, dict) or not set(doc) & {"t0", "a", "b", "t"}:
        raise InputError('expected a Pauli decomposition {"t0","a","b","t"}')
    try:
        return PauliDecomposition.from_json(doc)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
