"""Command-line front end: ``fracver <subcommand> ...`` (or ``python -m fracver``)."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import claims as claims_mod
from .diagnostics import final_value_check, laplace_probe, sonine_check
from .errors import DomainError, FracError
from .fde import (
    FDEProblem,
    reduce_abc_to_caputo,
    reduce_cf_to_integer,
    residual_check,
    solve_caputo,
    solve_pseudo,
)
from .functions import named_function
from .glcalc import gl_derivative
from .grid import Grid, SampledFunction
from .heat1d import HeatProblem, solve_heat
from .kernels import ABML, CFExp, KernelSpec, PowerLaw, PrabhakarK, Tabulated
from .operators import OperatorKind, apply_operator
from .specfun import mittag_leffler, prabhakar_ml

PRECISION_N = {"fast": 512, "default": 2048, "thorough": 8192}


def default_N() -> int:
    level = os.environ.get("FRACVER_PRECISION", "default")
    if level not in PRECISION_N:
        raise DomainError(f"FRACVER_PRECISION must be one of {sorted(PRECISION_N)}, got {level!r}")
    return PRECISION_N[level]


# {{{ parsing helpers

def parse_kernel(spec: str) -> KernelSpec:
    """``power:mu``, ``cf:alpha[:M]``, ``abml:alpha[:B]``, ``prabhakar:a:b:g:lam`` or ``csv:path``."""
    kind, _, rest = spec.partition(":")
    if kind == "csv":
        return Tabulated(SampledFunction.from_csv(rest))
    try:
        args = [float(a) for a in rest.split(":")] if rest else []
    except ValueError:
        raise DomainError(f"bad kernel parameters in {spec!r}") from None
    if kind == "power" and len(args) == 1:
        return PowerLaw(args[0])
    if kind == "cf" and len(args) in (1, 2):
        return CFExp(*args)
    if kind == "abml" and len(args) in (1, 2):
        return ABML(*args)
    if kind == "prabhakar" and len(args) == 4:
        return PrabhakarK(*args)
    raise DomainError(
        f"unknown kernel {spec!r}; use power:mu, cf:alpha[:M], abml:alpha[:B], prabhakar:a:b:g:lam or csv:path"
    )


def parse_floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"expected a comma-separated list of numbers, got {text!r}") from None


def _rhs(spec: str):
    """Named right-hand sides g(t, y) with their partial derivatives."""
    name, _, arg = spec.partition(":")
    if name == "const":
        c = float(arg) if arg else 1.0
        return (lambda t, y: c), (lambda t, y: 0.0), (lambda t, y: 0.0)
    if name == "linear":
        lam = float(arg) if arg else -1.0
        return (lambda t, y: lam * y), (lambda t, y: 0.0), (lambda t, y: lam)
    if name == "sin-y":
        return (lambda t, y: math.sin(t) * y), (lambda t, y: math.cos(t) * y), (lambda t, y: math.sin(t))
    if name == "t":
        return (lambda t, y: t), (lambda t, y: 1.0), (lambda t, y: 0.0)
    raise DomainError(f"unknown right-hand side {spec!r}; use const:c, linear:lam, sin-y or t")


def _emit(text: str, out: str | None, summary: str):
    if out:
        Path(out).write_text(text)
        print(summary)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        print(summary, file=sys.stderr)


def _grid(args) -> Grid:
    return Grid(args.T, args.N if args.N is not None else default_N())


def _sampled_json(fs: SampledFunction, extra=None) -> str:
    d = {"t": fs.t.tolist(), "value": [float(v) for v in fs.values], "t0": fs.t0}
    if extra:
        d.update(extra)
    return json.dumps(d)

# }}}


# {{{ subcommands

OPS = {
    "caputo": OperatorKind.CaputoDerivative,
    "rl": OperatorKind.RLDerivative,
    "rl-integral": OperatorKind.RLIntegral,
    "cf": OperatorKind.CFDerivative,
    "abc": OperatorKind.ABCDerivative,
    "cf-integral": OperatorKind.CFIntegral,
    "ab-integral": OperatorKind.ABIntegral,
    "dphi": OperatorKind.GenericDPhi,
    "prabhakar": OperatorKind.PrabhakarDerivative,
    "prabhakar-integral": OperatorKind.PrabhakarIntegral,
}


def cmd_apply(args) -> int:
    grid = _grid(args)
    f = named_function(args.f)
    if args.op == "gl":
        if args.alpha is None:
            raise DomainError("gl needs --alpha")
        out = gl_derivative(args.alpha, f, grid, args.ext)
    else:
        kernel = parse_kernel(args.kernel) if args.kernel else None
        out = apply_operator(OPS[args.op], f, grid, args.alpha, kernel=kernel, M=args.M, B=args.B,
                             beta=args.beta, gamma_p=args.gamma, lam=args.lam,
                             slopes=args.slopes, rule=args.rule)
    text = out.to_csv() if args.format == "csv" else _sampled_json(out)
    _emit(text, args.out, f"{args.op}: {grid.N} steps on [0, {grid.T:g}], value at T = {out.values[-1]:.10g}")
    return 0


def cmd_ml(args) -> int:
    z = parse_floats(args.z)
    if args.gamma is None:
        vals = mittag_leffler(args.alpha, args.beta, np.array(z))
    else:
        vals = prabhakar_ml(args.alpha, args.beta, args.gamma, np.array(z))
    if args.format == "json":
        text = json.dumps({"z": z, "value": [float(v) for v in vals]})
    else:
        text = "z,value\n" + "".join(f"{zi!r},{float(v)!r}\n" for zi, v in zip(z, vals))
    _emit(text, args.out, f"ml: {len(z)} values")
    return 0


def cmd_sonine(args) -> int:
    r = sonine_check(parse_kernel(args.phi), parse_kernel(args.psi), parse_floats(args.gaps), cells=args.cells)
    _emit(r.to_json(), args.out, f"sonine: {r.classification.value}")
    return 0


def cmd_laplace(args) -> int:
    k = parse_kernel(args.kernel)
    s = parse_floats(args.s)
    p = laplace_probe(k, s, args.T)
    d = {"s": s, "phi_hat": p.phi_hat.tolist(), "psi_hat": p.psi_hat.tolist()}
    if k.is_bounded:
        d["phi0"] = k.at_zero()
        d["final_value"] = final_value_check(k, args.final_s)
    _emit(json.dumps(d), args.out, f"laplace: {len(s)} abscissae")
    return 0


def cmd_solve(args) -> int:
    grid = _grid(args)
    g, g_t, g_y = _rhs(args.rhs)
    kind = {"caputo": OperatorKind.CaputoDerivative, "cf": OperatorKind.CFDerivative,
            "abc": OperatorKind.ABCDerivative}[args.op]
    p = FDEProblem(kind, args.alpha, g, args.y0, grid, g_t=g_t, g_y=g_y, M=args.M, B=args.B)
    if args.method == "reduce":
        if kind is OperatorKind.CFDerivative:
            y = reduce_cf_to_integer(p)
        elif kind is OperatorKind.ABCDerivative:
            y = reduce_abc_to_caputo(p)
        else:
            raise DomainError("reduce applies to cf and abc problems only")
    else:
        y = solve_caputo(p) if kind is OperatorKind.CaputoDerivative else solve_pseudo(p)
    rep = residual_check(p, y)
    if args.format == "csv":
        text = y.to_csv()
    else:
        text = json.dumps({"t": y.t.tolist(), "y": y.values.tolist(),
                           "residual": json.loads(rep.to_json())})
    _emit(text, args.out, f"solve {args.op}: y(T) = {y.values[-1]:.10g}, max mismatch {rep.max_mismatch:.3e}")
    return 0


def cmd_heat(args) -> int:
    grid = _grid(args)
    c = args.amp

    def v0(x):
        return c * np.sin(np.pi * x)

    if args.forcing == "zero":
        def forcing(x, t):
            return 0.0 * x
    else:
        def forcing(x, t):
            return c * np.pi**2 * np.sin(np.pi * x)

    p = HeatProblem(args.x_nodes, grid, parse_kernel(args.kernel), v0, forcing)
    r = solve_heat(p, start=args.start)
    text = r.to_csv()
    if args.summary:
        Path(args.summary).write_text(r.summary_json())
    _emit(text, args.out,
          f"heat: initial-slice residual {r.initial_slice_residual:.6g}, "
          f"first-level residual {r.per_level_residuals[0]:.6g}")
    return 0


def cmd_verify(args) -> int:
    if args.id:
        reports = [claims_mod.run_claim(i) for i in args.id]
    else:
        reports = claims_mod.run_all(args.tag)
    if args.format == "json":
        text = claims_mod.reports_to_json(reports)
    else:
        text = "".join(
            f"{'PASS' if r.passed else 'FAIL'} {r.id} value={r.value:.4e} tol={r.tolerance:.1e} ({r.runtime_ms} ms)\n"
            for r in reports
        )
    s = claims_mod.summarize(reports)
    _emit(text, args.out, f"verify: {s['passed']}/{s['total']} claims pass")
    return 0 if s["failed"] == 0 else 1


def cmd_list_claims(args) -> int:
    for cid in sorted(claims_mod.REGISTRY):
        c = claims_mod.REGISTRY[cid]
        print(f"{cid}\t{c.tag}\t{c.anchor}")
    return 0

# }}}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fracver", description="Fractional operators and their verification")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def grid_flags(p):
        p.add_argument("--T", type=float, default=1.0, help="horizon")
        p.add_argument("--N", type=int, default=None,
                       help="steps (default from FRACVER_PRECISION: fast=512, default=2048, thorough=8192)")

    def out_flags(p, formats=("csv", "json")):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=formats[0])

    p = sub.add_parser("apply", help="apply an operator to a named or sampled function")
    p.add_argument("--op", required=True, choices=sorted(OPS) + ["gl"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--f", required=True, help="const:c, linear, power:g, cos, sin, exp or csv:path")
    p.add_argument("--kernel", help="kernel for --op dphi")
    p.add_argument("--M", type=float, default=1.0)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--lam", type=float, default=0.0)
    p.add_argument("--ext", choices=["taylor", "zero"], default="taylor", help="extension for --op gl")
    p.add_argument("--slopes", choices=["difference", "midpoint", "derivative"], default="difference")
    p.add_argument("--rule", choices=["trapezoid", "rectangle"], default="trapezoid")
    grid_flags(p)
    out_flags(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("ml", help="evaluate Mittag-Leffler functions")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=None, help="three-parameter form")
    p.add_argument("--z", required=True, help="comma-separated arguments (write --z=-1,2 for a leading minus)")
    out_flags(p)
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("sonine", help="Sonine convolution of two kernels")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)
    p.add_argument("--gaps", required=True)
    p.add_argument("--cells", type=int, default=1024)
    out_flags(p, ("json",))
    p.set_defaults(func=cmd_sonine)

    p = sub.add_parser("laplace", help="Laplace transform probes of a kernel")
    p.add_argument("--kernel", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--T", type=float, default=math.inf)
    p.add_argument("--final-s", type=float, default=1e4)
    out_flags(p, ("json",))
    p.set_defaults(func=cmd_laplace)

    p = sub.add_parser("solve", help="solve a scalar fractional initial-value problem")
    p.add_argument("--op", required=True, choices=["caputo", "cf", "abc"])
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--rhs", required=True, help="const:c, linear:lam, sin-y or t")
    p.add_argument("--y0", type=float, default=0.0)
    p.add_argument("--M", type=float, default=1.0)
    p.add_argument("--B", type=float, default=1.0)
    p.add_argument("--method", choices=["direct", "reduce"], default="direct")
    grid_flags(p)
    out_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("heat", help="time-fractional heat equation with v0 = amp sin(pi x)")
    p.add_argument("--kernel", required=True)
    p.add_argument("--amp", type=float, default=1.0)
    p.add_argument("--forcing", choices=["zero", "compatible"], default="zero")
    p.add_argument("--x-nodes", type=int, default=63)
    p.add_argument("--start", choices=["continuous", "jump"], default="continuous")
    p.add_argument("--summary", help="write the JSON summary here")
    grid_flags(p)
    p.add_argument("--out", help="field CSV (default: stdout)")
    p.set_defaults(func=cmd_heat)

    p = sub.add_parser("verify", help="run registered claims")
    p.add_argument("--all", action="store_true", help="run every claim (the default)")
    p.add_argument("--tag", help="only claims with this tag")
    p.add_argument("--id", action="append", help="run this claim (repeatable)")
    out_flags(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list-claims", help="list registered claims")
    p.set_defaults(func=cmd_list_claims)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except FracError as e:
        print(f"fracver {args.cmd}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
