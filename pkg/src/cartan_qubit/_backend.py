"""Kernel selection.

The compiled extension is used when it imports; otherwise the numpy fallback.
Setting ``CARTAN_QUBIT_PURE_PYTHON=1`` forces the fallback.
"""
import os

import numpy as np

from . import _pykernels

if os.environ.get("CARTAN_QUBIT_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as kernels
        BACKEND = "cython"
    except ImportError:  # extension not built
        kernels = _pykernels
        BACKEND = "python"

SEED_ENV = "CARTAN_QUBIT_SEED"


def available_kernels():
    """All importable kernel modules keyed by backend name."""
    found = {"python": _pykernels}
    try:
        from . import _ckernels
        found["cython"] = _ckernels
    except ImportError:
        pass
    return found


def make_rng(seed=None):
    """RNG for randomized retries; seeded from the environment by default."""
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    return np.random.default_rng(seed)
