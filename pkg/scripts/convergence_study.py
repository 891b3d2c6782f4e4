"""Error and empirical order of several operators under grid doubling.

    python3 scripts/convergence_study.py --out convergence.json
"""

import argparse
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from fracver import operators as op
from fracver.functions import cos
from fracver.glcalc import gl_derivative
from fracver.grid import Grid
from fracver.functions import FunctionInput
from fracver.kernels import rate


@dataclass
class StudyConfig:
    alpha: float = 0.5
    T: float = 1.0
    Ns: list = field(default_factory=lambda: [256, 512, 1024, 2048, 4096])
    tmin: float = 0.1  # errors are also reported on [tmin, T]


def _errors(cfg, fn):
    full, away = [], []
    for N in cfg.Ns:
        g = Grid(cfg.T, N)
        err = np.abs(fn(g))
        full.append(float(np.max(err[1:])))
        away.append(float(np.max(err[g.nodes >= cfg.tmin - 1e-12])))
    return full, away


def _orders(errs):
    return [math.log2(a / b) if b > 0 else math.inf for a, b in zip(errs, errs[1:])]


def run(cfg: StudyConfig) -> dict:
    a = cfg.alpha
    cubic = FunctionInput(lambda t: 1.0 + t**3)
    cases = {
        "caputo_after_rl_integral": lambda g: op.caputo_derivative(a, op.rl_integral(a, cos(), g), g).values
        - np.cos(g.nodes),
        "cf_after_cf_integral": lambda g: op.cf_derivative(a, op.cf_integral(a, cos(), g), g).values
        - (np.cos(g.nodes) - np.exp(-rate(a) * g.nodes)),
        "gl_taylor_vs_caputo": lambda g: gl_derivative(a, cubic, g, "taylor").values
        - 6.0 * g.nodes ** (3 - a) / math.gamma(4 - a),
    }
    out = {"config": asdict(cfg), "cases": {}}
    for name, fn in cases.items():
        full, away = _errors(cfg, fn)
        out["cases"][name] = {"max_err": full, "order": _orders(full),
                              "max_err_away": away, "order_away": _orders(away)}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--out")
    args = ap.parse_args()
    res = run(StudyConfig(alpha=args.alpha))
    for name, r in res["cases"].items():
        print(f"{name:28s} err(N max) {r['max_err'][-1]:.3e}  orders {np.round(r['order'], 2).tolist()}"
              f"  | on t>=tmin {r['max_err_away'][-1]:.3e}  orders {np.round(r['order_away'], 2).tolist()}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(res, fh, indent=1)


if __name__ == "__main__":
    main()
