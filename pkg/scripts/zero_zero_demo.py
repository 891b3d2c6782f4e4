"""Bounded-kernel derivatives vanish at t = 0+, the Caputo derivative does not.

Prints D f(t) for f = cos and f = t**alpha on a shrinking sequence of t.

    python3 scripts/zero_zero_demo.py
"""

from dataclasses import dataclass

import numpy as np

from fracver import operators as op
from fracver.functions import cos, power
from fracver.grid import Grid
from fracver.specfun import gamma


@dataclass
class DemoConfig:
    alpha: float = 0.5
    t_values: tuple = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5)
    N: int = 1024


def value_at(fn, t, N):
    return float(fn(Grid(t, N)).values[-1])


def main(cfg: DemoConfig = DemoConfig()):
    a = cfg.alpha
    rows = {
        "CF  cos": lambda g: op.cf_derivative(a, cos(), g),
        "ABC cos": lambda g: op.abc_derivative(a, cos(), g),
        "CF  t^a": lambda g: op.cf_derivative(a, power(a), g),
        "ABC t^a": lambda g: op.abc_derivative(a, power(a), g),
        "Cap t^a": lambda g: op.caputo_derivative(a, power(a), g),
    }
    print("t".rjust(10) + "".join(name.rjust(14) for name in rows))
    for t in cfg.t_values:
        vals = [value_at(fn, t, cfg.N) for fn in rows.values()]
        print(f"{t:10.0e}" + "".join(f"{v:14.4e}" for v in vals))
    print(f"Caputo of t^a is the constant Gamma(1+a) = {gamma(1 + a):.6f}")


if __name__ == "__main__":
    main()
