"""Command-line front end: ``quatsylv {check,solve,verify,gen}``.

Exit codes
----------
0  success (consistent / solved / verified / generated)
2  input error: unparsable file, nonconformable shapes, bad arguments
3  the system is inconsistent
4  a candidate solution fails verification
"""
import argparse
import json
import os
import sys as _sys
from dataclasses import dataclass

import numpy as np

from .blocks import check_pair, pair_param_shapes, solve_pair
from .coupled import Solver
from .errors import Inconsistent, ParseError, QuatError, ShapeError
from .generate import generate
from .qio import format_qmat, format_qsys, read_qmat, read_qsys
from .quaternion import DEFAULT_TOL, Tolerances
from .systems import PATTERNS, FreeParameters, PairSystem
from .verification import residual

__all__ = ["main", "CliConfig", "EXIT_OK", "EXIT_INPUT", "EXIT_INCONSISTENT", "EXIT_VERIFY"]

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_VERIFY = 0, 2, 3, 4


@dataclass(frozen=True)
class CliConfig:
    """Parsed command line."""

    command: str
    paths: tuple = ()
    kind: str = None
    size: int = None
    seed: int = None
    free: str = "zero"
    tol: Tolerances = DEFAULT_TOL
    out: str = None
    format: str = "text"


class _InputError(Exception):
    pass


def _parser():
    p = argparse.ArgumentParser(
        prog="quatsylv",
        description="Solvability tests and general solutions of coupled "
        "one-sided Sylvester-type quaternion matrix equations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-rank", type=float, default=None, metavar="RTOL",
                        help="relative singular-value cutoff for ranks and pseudoinverses")
    common.add_argument("--tol-verify", type=float, default=DEFAULT_TOL.verify_tol, metavar="TOL",
                        help="maximum relative residual accepted by verify (default %(default)g)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="print the solvability certificate")
    c.add_argument("system", help=".qsys file")

    s = sub.add_parser("solve", parents=[common], help="write a solution X1.qmat, ... to --out")
    s.add_argument("system", help=".qsys file")
    s.add_argument("--free", choices=("zero", "random"), default="zero",
                   help="free parameters: all zero, or seeded random integers")
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", required=True, help="output directory")

    v = sub.add_parser("verify", parents=[common], help="residuals of a solution directory")
    v.add_argument("system", help=".qsys file")
    v.add_argument("solution", help="directory holding X1.qmat, X2.qmat, ...")

    g = sub.add_parser("gen", parents=[common], help="generate a consistent system")
    g.add_argument("--kind", required=True, choices=tuple(PATTERNS))
    g.add_argument("--size", type=int, required=True, help="common size of every unknown (>= 1)")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True, help="output directory")
    return p


def _config(ns):
    try:
        tol = Tolerances(rank_rtol=ns.tol_rank, verify_tol=ns.tol_verify)
    except ValueError as exc:
        raise _InputError(str(exc)) from None
    paths = tuple(getattr(ns, k) for k in ("system", "solution") if getattr(ns, k, None))
    cfg = CliConfig(
        command=ns.command,
        paths=paths,
        kind=getattr(ns, "kind", None),
        size=getattr(ns, "size", None),
        seed=getattr(ns, "seed", None),
        free=getattr(ns, "free", "zero"),
        tol=tol,
        out=getattr(ns, "out", None),
        format=ns.format,
    )
    if cfg.command == "solve" and cfg.free == "random" and cfg.seed is None:
        raise _InputError("--free random requires --seed")
    if cfg.command == "gen" and cfg.size < 1:
        raise _InputError("--size must be at least 1")
    return cfg


# -- output helpers -------------------------------------------------------------

def _emit(cfg, lines, payload, stream=None):
    stream = stream or _sys.stdout
    if cfg.format == "json":
        stream.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        stream.write("\n".join(lines) + "\n")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _certificate(system, tol):
    if isinstance(system, PairSystem):
        return check_pair(system, tol), None
    solver = Solver(system, tol)
    return solver.certificate, solver


# -- commands -------------------------------------------------------------------

def cmd_check(cfg):
    system = read_qsys(cfg.paths[0])
    cert, _ = _certificate(system, cfg.tol)
    lines = cert.lines()
    if not cert.routes_agree:
        lines.append("warning: the rank and projector routes disagree")
    lines.append("consistent" if cert.verdict else "inconsistent")
    _emit(cfg, lines, dict(cert.to_dict(), routes_agree=cert.routes_agree))
    return EXIT_OK if cert.verdict else EXIT_INCONSISTENT


def _solution(system, cfg):
    if isinstance(system, PairSystem):
        shapes = pair_param_shapes(system)
        free = FreeParameters.random(shapes, cfg.seed) if cfg.free == "random" else None
        return solve_pair(system, free, cfg.tol)
    solver = Solver(system, cfg.tol)
    free = None
    if cfg.free == "random":
        free = FreeParameters.random(solver.param_shapes, np.random.default_rng(cfg.seed))
    return solver.solve(free)


def cmd_solve(cfg):
    system = read_qsys(cfg.paths[0])
    try:
        sol = _solution(system, cfg)
    except Inconsistent as exc:
        _sys.stderr.write(f"inconsistent: {exc}\n")
        return EXIT_INCONSISTENT
    report = residual(system, sol)
    os.makedirs(cfg.out, exist_ok=True)
    written = []
    for k, X in sol.X.items():
        name = f"X{k}.qmat"
        _write(os.path.join(cfg.out, name), format_qmat(X))
        written.append(name)
    payload = {"free": cfg.free, "seed": cfg.seed, "residuals": report.to_dict()}
    lines = [f"free parameters: {cfg.free}" + (f" (seed {cfg.seed})" if cfg.free == "random" else "")]
    if sol.X3_alternate is not None:
        gap = (sol.X[3] - sol.X3_alternate).norm() / report.scale
        payload["x3_branch_gap"] = gap
        lines.append(f"X3 branch gap (relative) = {gap:.3e}")
    lines += report.lines()
    _write(os.path.join(cfg.out, "residuals.txt"), "\n".join(lines) + "\n")
    written.append("residuals.txt")
    _emit(cfg, lines + ["wrote " + ", ".join(written)], dict(payload, files=written))
    return EXIT_OK if report.passes(cfg.tol) else EXIT_VERIFY


def cmd_verify(cfg):
    system = read_qsys(cfg.paths[0])
    folder = cfg.paths[1]
    X = {}
    for k in system.unknown_shapes:
        path = os.path.join(folder, f"X{k}.qmat")
        if not os.path.exists(path):
            raise _InputError(f"{path}: missing")
        X[k] = read_qmat(path)
    report = residual(system, X)
    ok = report.passes(cfg.tol)
    lines = report.lines() + [
        f"{'verified' if ok else 'FAILED'} (tolerance {cfg.tol.verify_tol:g})"
    ]
    _emit(cfg, lines, dict(report.to_dict(), verified=ok, tolerance=cfg.tol.verify_tol))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gen(cfg):
    system, planted = generate(cfg.kind, cfg.size, cfg.seed)
    os.makedirs(cfg.out, exist_ok=True)
    written = ["system.qsys"]
    _write(os.path.join(cfg.out, "system.qsys"), format_qsys(system))
    for k, X in planted.X.items():
        name = f"X{k}.qmat"
        _write(os.path.join(cfg.out, name), format_qmat(X))
        written.append(name)
    lines = [f"{cfg.kind} size {cfg.size} seed {cfg.seed}", "wrote " + ", ".join(written)]
    _emit(cfg, lines, {"kind": cfg.kind, "size": cfg.size, "seed": cfg.seed, "files": written})
    return EXIT_OK


_COMMANDS = {"check": cmd_check, "solve": cmd_solve, "verify": cmd_verify, "gen": cmd_gen}


def main(argv=None):
    """Entry point; returns the exit code."""
    ns = _parser().parse_args(argv)
    try:
        cfg = _config(ns)
        return _COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        _sys.stderr.write(f"parse error: {exc}\n")
    except (ShapeError, _InputError, OSError) as exc:
        _sys.stderr.write(f"input error: {exc}\n")
    except QuatError as exc:
        _sys.stderr.write(f"error: {exc}\n")
    return EXIT_INPUT

