"""Command-line front end: ``cartan-qubit <subcommand> ...``.

Every subcommand writes either a JSON document
``{"status": "ok", "payload": ..., "diagnostics": [...]}`` or CSV. Errors are
reported as ``{"status": "error", "code": ..., "message": ...}`` with exit
code 2 (bad input), 3 (numerical failure) or 4 (phase boundary).
Diagnostics are also echoed to stderr.
"""
import argparse
import io
import json
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .entanglement import (Antiunitary, concurrence, concurrence_trajectory,
                           make_kane_mele_theta, make_particle_hole_2fermion,
                           make_time_reversal_2q)
from .errors import CartanQubitError, InputError, NumericalFailure, PhaseBoundary
from .graph import GraphParams, invariant_nu, phase_scan, spectrum
from .kak import kak_decompose
from .linalg import DEFAULT_TOL
from .pauli import cartan_split, is_local_hamiltonian
from .serialize import (hamiltonian_from_json, load_json_arg,
                        matrix_from_json, pauli_from_json, state_from_json)
from .tenfold import (TENFOLD_TABLE, classify, clifford_signature, finite_homotopy,
                      finite_variants, flatten, stable_homotopy, class_by_name)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_BOUNDARY = 4

SQUARE_MINUS_ONE = "antiunitary squares to -1; concurrence identically zero"


class Result:
    """Output of one subcommand before formatting."""

    def __init__(self, payload, csv: Optional[str] = None, text: Optional[str] = None,
                 diagnostics: Optional[List[str]] = None):
        self.payload = payload
        self.csv = csv
        self.text = text
        self.diagnostics = list(diagnostics or [])


def _tol(args) -> float:
    return getattr(args, "tol", None) or DEFAULT_TOL


def _antiunitary(kind: str, custom: Optional[str], tol: float) -> Optional[Antiunitary]:
    if kind == "none":
        return None
    if kind == "wootters":
        return make_time_reversal_2q()
    if kind == "particle_hole":
        return make_particle_hole_2fermion()
    if kind == "kane_mele":
        return make_kane_mele_theta()
    if custom is None:
        raise InputError("custom antiunitary needs --theta-matrix / --pi-matrix")
    return Antiunitary.from_unitary(matrix_from_json(load_json_arg(custom)), tol)


def cmd_decompose(args) -> Result:
    u = matrix_from_json(load_json_arg(args.input))
    f = kak_decompose(u, _tol(args))
    return Result(f.to_json())


def cmd_concurrence(args) -> Result:
    tol = _tol(args)
    psi, diags = state_from_json(load_json_arg(args.state))
    theta = _antiunitary(args.theta, args.theta_matrix, tol)
    if psi.dim != theta.dim:
        raise InputError(f"state has {psi.dim} amplitudes but the antiunitary acts on {theta.dim}")
    if theta.square == -1:
        diags.append(SQUARE_MINUS_ONE)
    c = concurrence(psi, theta)
    return Result({"concurrence": c, "theta_square": theta.square},
                  text="%.12f\n" % c, diagnostics=diags)


def _homotopy_block(cls, n: int) -> dict:
    row = TENFOLD_TABLE[cls.name]
    out = {
        "class": cls.name,
        "stable_hamiltonian_space": row.hamiltonian_space,
        "stable_evolution_space": row.evolution_space,
        "stable_pi0": str(row.pi0),
        "finite": [],
    }
    for space in (row.hamiltonian_space, row.evolution_space):
        try:
            variants = finite_variants(space)
        except CartanQubitError:
            continue
        for v in variants:
            try:
                pi0, pi1 = finite_homotopy(space, v.variant, n)
            except CartanQubitError:
                continue
            out["finite"].append({"space": space, "variant": v.variant, "n": n,
                                  "description": v.description,
                                  "pi0": None if pi0 is None else str(pi0), "pi1": str(pi1)})
    return out


def cmd_classify(args) -> Result:
    tol = _tol(args)
    h = hamiltonian_from_json(load_json_arg(args.hamiltonian), tol)
    theta = _antiunitary(args.theta, args.theta_matrix, tol)
    pi = _antiunitary(args.pi, args.pi_matrix, tol)
    chiral = matrix_from_json(load_json_arg(args.chiral)) if args.chiral else None
    cls = classify(h, theta, pi, tol, chiral=chiral)
    flat = flatten(h, tol=tol)
    payload = _homotopy_block(cls, h.shape[0])
    payload["k_negative"] = flat.k_negative
    payload["gap"] = flat.gap
    payload["dimension"] = h.shape[0]
    disjoint = [f for f in payload["finite"] if f["variant"] == "disjoint"]
    payload["finite_pi0"] = disjoint[0]["pi0"] if disjoint else None
    return Result(payload)


def cmd_split(args) -> Result:
    tol = _tol(args)
    p = pauli_from_json(load_json_arg(args.hamiltonian), tol)
    s = cartan_split(p)
    return Result({
        "h_part": s.h_part.to_json(),
        "p_part": s.p_part.to_json(),
        "trace_part": s.trace_part,
        "local": is_local_hamiltonian(p, tol),
    })


def _times(args) -> np.ndarray:
    if args.times is not None:
        try:
            times = np.asarray(json.loads(args.times), dtype=np.float64).reshape(-1)
        except (ValueError, TypeError) as exc:
            raise InputError(f"--times must be a JSON list of numbers: {exc}") from exc
    else:
        if args.steps < 1:
            raise InputError("--steps must be positive")
        times = np.linspace(args.t_min, args.t_max, args.steps)
    if not np.all(np.isfinite(times)):
        raise InputError("times must be finite")
    return times


def cmd_evolve(args) -> Result:
    tol = _tol(args)
    h = hamiltonian_from_json(load_json_arg(args.hamiltonian), tol)
    psi, diags = state_from_json(load_json_arg(args.state))
    theta = _antiunitary(args.theta, args.theta_matrix, tol)
    times = _times(args)
    cs = concurrence_trajectory(psi, h, theta, times, tol)
    buf = io.StringIO()
    buf.write("t,concurrence\n")
    for t, c in zip(times, cs):
        buf.write(f"{float(t)!r},{float(c)!r}\n")
    return Result({"times": times.tolist(), "concurrence": cs.tolist()},
                  csv=buf.getvalue(), diagnostics=diags)


def _params(args) -> GraphParams:
    try:
        return GraphParams(args.alpha, args.beta, args.gamma)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_spectrum(args) -> Result:
    lines = spectrum(_params(args))
    buf = io.StringIO()
    buf.write("label,energy\n")
    for line in lines:
        buf.write(f"{line.label},{line.energy!r}\n")
    return Result([{"label": line.label, "energy": line.energy,
                    "state": line.state.to_json()} for line in lines], csv=buf.getvalue())


def cmd_invariants(args) -> Result:
    return Result(invariant_nu(_params(args)).to_json())


def cmd_phase_scan(args) -> Result:
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    if not (np.isfinite(args.gamma_min) and np.isfinite(args.gamma_max)) \
            or args.gamma_min >= args.gamma_max:
        raise InputError("need finite gamma_min < gamma_max")
    GraphParams(args.alpha, args.beta, 0.0)
    grid = np.linspace(args.gamma_min, args.gamma_max, args.steps)
    scan = phase_scan(args.alpha, args.beta, grid)
    payload = {
        "alpha": scan.alpha,
        "beta": scan.beta,
        "rows": [{"gamma": g, "nu": n, "zero_modes": list(z)} for g, n, z in scan.rows()],
        "crossings": [{"label": label, "gamma": g} for label, g in scan.crossings()],
    }
    return Result(payload, csv=scan.to_csv())


def cmd_homotopy(args) -> Result:
    if args.space is not None:
        if args.n is None:
            raise InputError("finite lookups need --n")
        variant = int(args.variant) if args.variant.isdigit() else args.variant
        pi0, pi1 = finite_homotopy(args.space, variant, args.n)
        return Result({"space": args.space, "variant": args.variant, "n": args.n,
                       "pi0": None if pi0 is None else str(pi0), "pi1": str(pi1)})
    if args.cls is None:
        raise InputError("give --class (stable lookup) or --space (finite lookup)")
    try:
        cls = class_by_name(args.cls)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return Result({"class": cls.name, "d": args.d, "group": str(stable_homotopy(cls, args.d))})


def cmd_clifford(args) -> Result:
    if args.p < 0 or args.q < 0:
        raise InputError("p and q must be non-negative")
    c = clifford_signature(args.p, args.q)
    return Result({"p": c.p, "q": c.q, "w": c.w, "s": c.s, "d": c.d})


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="numerical tolerance (default 1e-9)")
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write the result to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS,
                        help="output format (default depends on the subcommand)")
    return common


def _theta_args(p: argparse.ArgumentParser, default: str, choices):
    p.add_argument("--theta", default=default, choices=choices)
    p.add_argument("--theta-matrix", help="unitary part of a custom antiunitary (JSON)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="cartan-qubit", parents=[common],
        description="Two-qubit Cartan decomposition, concurrence and topology toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("decompose", parents=[common], help="KAK decomposition of a 4x4 unitary")
    p.add_argument("input", help='matrix {"re","im"}: inline JSON, file path or -')
    p.set_defaults(func=cmd_decompose, default_format="json")

    p = sub.add_parser("concurrence", parents=[common], help="concurrence of a pure state")
    p.add_argument("state", help='state {"re","im"}: inline JSON, file path or -')
    _theta_args(p, "wootters", ("wootters", "particle_hole", "kane_mele", "custom"))
    p.set_defaults(func=cmd_concurrence, default_format="text")

    p = sub.add_parser("classify", parents=[common], help="tenfold class and homotopy data")
    p.add_argument("hamiltonian", help="Pauli decomposition or matrix JSON")
    _theta_args(p, "none", ("none", "wootters", "kane_mele", "custom"))
    p.add_argument("--pi", default="none", choices=("none", "particle_hole", "custom"))
    p.add_argument("--pi-matrix", help="unitary part of a custom particle-hole operator (JSON)")
    p.add_argument("--chiral", help="candidate chiral unitary (JSON), tested when no antiunitary holds")
    p.set_defaults(func=cmd_classify, default_format="json")

    p = sub.add_parser("split", parents=[common], help="local / entangling split of a Hamiltonian")
    p.add_argument("hamiltonian", help="Pauli decomposition or matrix JSON")
    p.set_defaults(func=cmd_split, default_format="json")

    p = sub.add_parser("evolve", parents=[common], help="concurrence along exp(-iHt)|psi0>")
    p.add_argument("--hamiltonian", required=True, help="Pauli decomposition or matrix JSON")
    p.add_argument("--state", required=True, help='initial state {"re","im"}')
    _theta_args(p, "wootters", ("wootters", "particle_hole", "kane_mele", "custom"))
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--times", help="explicit JSON list of times (overrides the range)")
    p.set_defaults(func=cmd_evolve, default_format="json")

    for name, func, helptext in (("spectrum", cmd_spectrum, "closed-form graph spectrum"),
                                 ("invariants", cmd_invariants, "topological invariants nu1, nu2, nu")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)
        p.add_argument("--gamma", type=float, required=True)
        p.set_defaults(func=func, default_format="json")

    p = sub.add_parser("phase-scan", parents=[common], help="scan gamma for phase transitions")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma-min", type=float, required=True)
    p.add_argument("--gamma-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.set_defaults(func=cmd_phase_scan, default_format="csv")

    p = sub.add_parser("homotopy", parents=[common], help="stable or finite homotopy lookups")
    p.add_argument("--class", dest="cls", help="symmetry class for a stable lookup")
    p.add_argument("--d", type=int, default=0, help="spatial dimension (stable lookup)")
    p.add_argument("--space", choices=("C0", "R0", "R7"), help="finite space")
    p.add_argument("--variant", default="0", help="variant name or index (finite lookup)")
    p.add_argument("--n", type=int, help="matrix size (finite lookup)")
    p.set_defaults(func=cmd_homotopy, default_format="json")

    p = sub.add_parser("clifford", parents=[common], help="Clifford (s, d) bookkeeping")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_clifford, default_format="json")
    return parser


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, PhaseBoundary):
        return EXIT_BOUNDARY
    if isinstance(exc, NumericalFailure):
        return EXIT_NUMERICAL
    return EXIT_INPUT


def _emit(text: str, output: Optional[str], stdout):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def _render(result: Result, fmt: str) -> str:
    if fmt == "csv":
        if result.csv is None:
            raise InputError("this subcommand has no CSV output")
        return result.csv
    if fmt == "text" and result.text is not None:
        return result.text
    doc = {"status": "ok", "payload": result.payload, "diagnostics": result.diagnostics}
    return json.dumps(doc, indent=2) + "\n"


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    output = getattr(args, "output", None)
    fmt = getattr(args, "format", None) or args.default_format
    try:
        if getattr(args, "tol", DEFAULT_TOL) <= 0:
            raise InputError("--tol must be positive")
        result = args.func(args)
        text = _render(result, fmt)
    except (CartanQubitError, ValueError, OSError) as exc:
        code = getattr(exc, "code", "bad_input")
        status = _exit_code(exc)
        stderr.write(f"error [{code}]: {exc}\n")
        doc = {"status": "error", "code": code, "message": str(exc), "diagnostics": []}
        stdout.write(json.dumps(doc, indent=2) + "\n")
        return status
    for d in result.diagnostics:
        stderr.write(f"warning: {d}\n")
    _emit(text, output, stdout)
    return EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
