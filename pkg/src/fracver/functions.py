"""Function inputs for the operators: callables with optional derivative, or samples."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .convquad import differentiate_samples
from .errors import DomainError, MissingDerivativeError
from .grid import Grid, SampledFunction

__all__ = [
    "FunctionInput",
    "as_input",
    "const",
    "linear",
    "power",
    "cos",
    "sin",
    "exp",
    "named_function",
]

Func = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class FunctionInput:
    """Either a callable ``func`` (with optional ``deriv``) or a sample table."""

    func: Func | None = None
    deriv: Func | None = None
    samples: SampledFunction | None = None
    name: str = "f"

    def __post_init__(self):
        if (self.func is None) == (self.samples is None):
            raise DomainError("give exactly one of func or samples")

    def sample(self, grid: Grid) -> SampledFunction:
        if self.samples is not None:
            if self.samples.grid != grid:
                raise DomainError("sample table does not live on the requested grid")
            return self.samples
        t = grid.nodes
        v = np.broadcast_to(np.asarray(self.func(t), dtype=float), t.shape).copy()
        d = None
        if self.deriv is not None:
            with np.errstate(divide="ignore", invalid="ignore"):
                d = np.broadcast_to(np.asarray(self.deriv(t), dtype=float), t.shape).copy()
        return SampledFunction(grid, v, d)

    def cell_slopes(self, grid: Grid, rule: str = "difference"):
        """Per-cell values of f' for the derivative-type operators.

        ``difference`` uses (f_{j+1}-f_j)/h, ``midpoint`` the analytic
        derivative at cell midpoints, ``derivative`` the mean of nodal
        derivative samples (finite differences for sampled input).
        """
        if rule == "difference":
            return "difference"
        if rule == "midpoint":
            if self.deriv is None:
                raise MissingDerivativeError(f"{self.name}: no analytic derivative for midpoint slopes")
            return np.asarray(self.deriv(grid.midpoints), dtype=float) * np.ones(grid.N)
        if rule == "derivative":
            return "derivative"
        raise DomainError(f"unknown slope rule {rule!r}")

    def sample_for_slopes(self, grid: Grid, rule: str) -> SampledFunction:
        f = self.sample(grid)
        if rule == "derivative" and f.deriv_values is None:
            f = differentiate_samples(f)
        return f


def as_input(f) -> FunctionInput:
    """Accept a FunctionInput, a SampledFunction or a bare callable."""
    if isinstance(f, FunctionInput):
        return f
    if isinstance(f, SampledFunction):
        return FunctionInput(samples=f, name="samples")
    if callable(f):
        return FunctionInput(func=f, name=getattr(f, "__name__", "f"))
    raise DomainError(f"cannot use {type(f).__name__} as a function input")


def const(c: float = 1.0) -> FunctionInput:
    return FunctionInput(lambda t: np.full_like(t, c, dtype=float), lambda t: np.zeros_like(t), name=f"const:{c}")


def linear() -> FunctionInput:
    return FunctionInput(lambda t: np.asarray(t, dtype=float), lambda t: np.ones_like(t), name="linear")


def power(gam: float) -> FunctionInput:
    """t**gam; the derivative is infinite at 0 when gam < 1."""
    if gam < 0:
        raise DomainError("power exponent must be non-negative")
    if gam == 0:
        return const(1.0)
    return FunctionInput(lambda t: np.asarray(t, dtype=float) ** gam,
                         lambda t: gam * np.asarray(t, dtype=float) ** (gam - 1.0),
                         name=f"power:{gam}")


def cos() -> FunctionInput:
    return FunctionInput(np.cos, lambda t: -np.sin(t), name="cos")


def sin() -> FunctionInput:
    return FunctionInput(np.sin, np.cos, name="sin")


def exp() -> FunctionInput:
    return FunctionInput(np.exp, np.exp, name="exp")


def named_function(spec: str) -> FunctionInput:
    """Parse ``const:c``, ``linear``, ``power:g``, ``cos``, ``sin``, ``exp`` or ``csv:path``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "const":
            return const(float(arg) if arg else 1.0)
        if name == "linear" and not arg:
            return linear()
        if name == "power":
            return power(float(arg))
        if name in ("cos", "sin", "exp") and not arg:
            return {"cos": cos, "sin": sin, "exp": exp}[name]()
        if name == "csv":
            return FunctionInput(samples=SampledFunction.from_csv(arg), name=spec)
    except ValueError as e:
        raise DomainError(f"bad function spec {spec!r}: {e}") from e
    raise DomainError(
        f"unknown function {spec!r}; use const:c, linear, power:g, cos, sin, exp or csv:path"
    )
