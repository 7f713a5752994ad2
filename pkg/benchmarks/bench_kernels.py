"""Compiled versus numpy kernels.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` time per call for each kernel and for the full
``kak_decompose`` pipeline under every importable backend.
"""
import argparse
import timeit

import numpy as np

from cartan_qubit import _backend, graph, kak
from cartan_qubit.entanglement import MAGIC


def haar(rng, n=4):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def cases(rng):
    u = haar(rng)
    o = MAGIC.conj().T @ u @ MAGIC
    a, b = np.ascontiguousarray(o.real), np.ascontiguousarray(o.imag)
    gammas = np.linspace(-6, 6, 10_000)
    states = np.array([haar(rng)[:, 0] for _ in range(1000)])
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    unitaries = [haar(rng) for _ in range(200)]

    def full_kak():
        for m in unitaries:
            kak.kak_decompose(m)

    return {
        "joint_diag_attempt (1 call)": (lambda k: k.joint_diag_attempt(a, b, 0.0, 0.0), 1),
        "graph_scan (1e4 gammas)": (lambda k: k.graph_scan(1.0, 3.0, gammas, graph.BOUNDARY_REL), 1),
        "concurrence_batch (1e3 states)": (lambda k: k.concurrence_batch(states, yy), 1),
        "kak_decompose (per matrix)": (lambda k: full_kak(), len(unitaries)),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = _backend.available_kernels()
    original = _backend.kernels
    rng = np.random.default_rng(0)
    table = cases(rng)
    names = sorted(backends)
    print(f"{'kernel':34s}" + "".join(f"{n:>14s}" for n in names) + f"{'speedup':>10s}")
    try:
        for label, (fn, per) in table.items():
            row = {}
            for name in names:
                mod = backends[name]
                _backend.kernels = mod
                number = max(1, int(0.2 / max(min(timeit.repeat(lambda: fn(mod), number=1, repeat=2)), 1e-7)))
                best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
                row[name] = best / per
            cells = "".join(f"{row[n] * 1e6:12.1f}us" for n in names)
            speed = row["python"] / row["cython"] if "cython" in row else float("nan")
            print(f"{label:34s}{cells}{speed:9.1f}x")
    finally:
        _backend.kernels = original
    print(f"default backend: {_backend.BACKEND}")


if __name__ == "__main__":
    main()
