"""Command line front end.

    qge smatrix   --graph g.json --k 1.1 | --k-range 0.1:3:30
    qge sweep     --mode channel --grid tA2=0:1:101 --grid tB2=0:1:101 --fix phi=pi
    qge gates     hadamard --sign - --n-alpha 2
    qge solve-phi --kbl pi/4 --n 1

Exit status: 0 success, 1 numerical failure (resonance, tolerance), 2 usage
or input error.  Numeric arguments accept simple expressions such as
``pi/2`` or ``atan(2)``.
"""

from __future__ import annotations

import argparse
import ast
import io
import json
import math
import operator
import sys

import numpy as np

from . import __version__
from .entanglement import (
    AXES, Gate, GateSpec, SweepMode, entropy_surface, solve_phi, tan_product_residual,
    verify_gate,
)
from .graph import GraphError, errors, load_graph, validate
from .scattering import DEFAULT_TOL, ResonanceError, global_smatrix

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
SCHEMA_VERSION = 1

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_FUNCS = {"atan": math.atan, "arctan": math.atan, "sqrt": math.sqrt, "sin": math.sin,
          "cos": math.cos, "tan": math.tan}
_NAMES = {"pi": math.pi, "e": math.e}


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Evaluate a numeric literal or a small arithmetic expression."""
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name)
                and node.func.id in _FUNCS and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    try:
        value = ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"cannot parse number {text!r}: {exc}") from None
    if not math.isfinite(value):
        raise ValueError(f"{text!r} is not finite")
    return value


def _number(text: str) -> float:
    try:
        return parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range {text!r} must look like min:max:steps")
    try:
        lo, hi = parse_number(parts[0]), parse_number(parts[1])
        steps = int(parts[2])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if steps < 1:
        raise UsageError(f"range {text!r}: steps must be >= 1")
    if lo > hi:
        raise UsageError(f"range {text!r}: min must not exceed max")
    return lo, hi, steps


# -- output ----------------------------------------------------------------

def _csv_float(x: float) -> str:
    return f"{x:.16e}"


def render(kind: str, config: dict, columns, rows, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "schema": f"qge.{kind}",
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "config": config,
            "rows": [{c: float(v) for c, v in zip(columns, row)} for row in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    out = io.StringIO()
    out.write(f"# qge.{kind} schema_version={SCHEMA_VERSION}\n")
    out.write(f"# tool_version={__version__}\n")
    out.write(f"# config={json.dumps(config, sort_keys=True)}\n")
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(_csv_float(float(v)) for v in row) + "\n")
    return out.getvalue()


def emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


# -- subcommands -----------------------------------------------------------

SMATRIX_COLUMNS = ("k", "re_r", "im_r", "re_t", "im_t", "abs_r2", "abs_t2", "unitarity_residual")


def cmd_smatrix(args) -> int:
    try:
        graph = load_graph(args.graph)
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc}") from None
    problems = errors(validate(graph))
    if problems:
        raise GraphError("invalid graph", problems)

    if args.k_range is not None:
        ks = np.linspace(*parse_range(args.k_range))
    else:
        ks = np.array([args.k])

    rows, status = [], EXIT_OK
    for k in ks:
        try:
            S = global_smatrix(graph, float(k))
        except ResonanceError as exc:
            if args.skip_resonances:
                print(f"qge: skipping {exc}", file=sys.stderr)
                continue
            print(f"qge: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        ch = S.channel()
        residual = S.unitarity_residual()
        if residual > args.tol:
            print(f"qge: unitarity residual {residual:.3g} exceeds tol at k={k!r}", file=sys.stderr)
            status = EXIT_NUMERIC
        rows.append((k, ch.r.real, ch.r.imag, ch.t.real, ch.t.imag,
                     ch.reflection, ch.transmission, residual))

    config = {"k": args.k, "k_range": args.k_range, "skip_resonances": args.skip_resonances}
    emit(render("smatrix", config, SMATRIX_COLUMNS, rows, args.format), args.out)
    return status


DEFAULT_GRIDS = {
    SweepMode.CHANNEL_PHASE: {"tA2": (0.0, 1.0, 51), "tB2": (0.0, 1.0, 51), "phi": math.pi},
    SweepMode.EDGE_PHASE: {"kAl": (0.0, math.pi, 51), "kBl": (0.0, math.pi, 51), "phi": math.pi},
}


def sweep_grid(mode: SweepMode, grids, fixes) -> dict:
    names = AXES[mode]
    grid = dict(DEFAULT_GRIDS[mode])
    for item in grids or ():
        name, _, spec = item.partition("=")
        if name not in names:
            raise UsageError(f"unknown axis {name!r} for mode {mode.value}; axes are {', '.join(names)}")
        grid[name] = parse_range(spec)
    for item in fixes or ():
        name, _, value = item.partition("=")
        if name not in names:
            raise UsageError(f"unknown axis {name!r} for mode {mode.value}; axes are {', '.join(names)}")
        try:
            grid[name] = parse_number(value)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return grid


def cmd_sweep(args) -> int:
    mode = SweepMode(args.mode)
    grid = sweep_grid(mode, args.grid, args.fix)
    try:
        table = entropy_surface(mode, grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = {
        "mode": mode.value,
        "axes": {n: (list(grid[n]) if isinstance(grid[n], tuple) else grid[n]) for n in AXES[mode]},
    }
    emit(render("sweep", config, table.columns, table.data, args.format), args.out)
    return EXIT_OK


def cmd_gates(args) -> int:
    spec = GateSpec(Gate(args.gate), n_phi=args.n_phi, n_alpha=args.n_alpha, n_beta=args.n_beta,
                    delta=args.delta, alpha=args.alpha, sign=-1 if args.sign == "-" else 1)
    report = verify_gate(spec, args.tol)
    p = report.params
    if args.format == "json":
        doc = {
            "gate": spec.gate.value,
            "n_phi": spec.n_phi, "n_alpha": spec.n_alpha, "n_beta": spec.n_beta,
            "params": {"x": p.x, "alpha": p.alpha, "beta": p.beta},
            "matrix": [[[z.real, z.imag] for z in row] for row in report.matrix.tolist()],
            "deviation": report.deviation,
            "tol": report.tol,
            "ok": report.ok,
        }
        emit(json.dumps(doc, indent=1) + "\n", args.out)
    else:
        lines = [
            f"gate       {spec.gate.value}",
            f"offsets    n_phi={spec.n_phi} n_alpha={spec.n_alpha} n_beta={spec.n_beta}",
            f"x          {p.x!r}",
            f"alpha      {p.alpha!r}",
            f"beta       {p.beta!r}",
            "matrix",
        ]
        for row in report.matrix:
            lines.append("  " + "  ".join(f"{z.real:+.12f}{z.imag:+.12f}j" for z in row))
        lines.append(f"deviation  {report.deviation:.3e} (up to global phase)")
        lines.append(f"status     {'ok' if report.ok else 'FAIL'} (tol {report.tol:g})")
        emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.ok else EXIT_NUMERIC


def cmd_solve_phi(args) -> int:
    phi = solve_phi(args.kbl, args.n)
    residual = tan_product_residual(args.kbl, phi)
    if args.format == "json":
        emit(json.dumps({"kBl": args.kbl, "n": args.n, "phi": phi, "residual": residual}) + "\n",
             args.out)
    else:
        emit(f"phi      {phi!r}\nresidual {residual:.3e}\n", args.out)
    return EXIT_OK


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json"), default="csv"):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("smatrix", help="scattering amplitudes of a graph file")
    p.add_argument("--graph", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=_number)
    g.add_argument("--k-range", metavar="MIN:MAX:STEPS")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--skip-resonances", action="store_true")
    common(p)
    p.set_defaults(func=cmd_smatrix)

    p = sub.add_parser("sweep", help="entanglement entropy over a parameter grid")
    p.add_argument("--mode", choices=[m.value for m in SweepMode], required=True)
    p.add_argument("--grid", action="append", metavar="AXIS=MIN:MAX:STEPS")
    p.add_argument("--fix", action="append", metavar="AXIS=VALUE")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gates", help="synthesize and verify a single-qubit gate")
    p.add_argument("gate", choices=[g.value for g in Gate])
    p.add_argument("--n-phi", type=int, default=0)
    p.add_argument("--n-alpha", type=int, default=0)
    p.add_argument("--n-beta", type=int, default=0)
    p.add_argument("--delta", type=_number, default=0.0, help="global-phase angle")
    p.add_argument("--alpha", type=_number, default=0.0, help="free lead phase for pauli-x")
    p.add_argument("--sign", choices=["+", "-"], default="+", help="hadamard branch")
    p.add_argument("--tol", type=float, default=1e-10)
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_gates)

    p = sub.add_parser("solve-phi", help="edge phase for maximal entanglement")
    p.add_argument("--kbl", type=_number, required=True)
    p.add_argument("--n", type=int, default=0)
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_solve_phi)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GraphError as exc:
        print(f"qge: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"qge: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
