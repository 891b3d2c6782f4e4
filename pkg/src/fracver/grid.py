"""Uniform time meshes and functions sampled on them."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = ["Grid", "SampledFunction", "T0_VALUE", "T0_LIMIT", "T0_UNBOUNDED"]

# Meaning of the stored value at t = 0.
T0_VALUE = "value"          # an ordinary function value
T0_LIMIT = "limit"          # placeholder 0, the operator is defined for t > 0 only
T0_UNBOUNDED = "unbounded"  # the operator blows up at t = 0+


@dataclass(frozen=True)
class Grid:
    """Uniform mesh t_j = j*h, j = 0..N, on [0, T]."""

    T: float
    N: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise DomainError(f"horizon T must be positive, got {self.T}")
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"step count N must be a positive integer, got {self.N}")
        object.__setattr__(self, "T", float(self.T))
        object.__setattr__(self, "N", int(self.N))

    @property
    def h(self) -> float:
        return self.T / self.N

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.h

    @property
    def midpoints(self) -> np.ndarray:
        return (np.arange(self.N) + 0.5) * self.h

    def __len__(self) -> int:
        return self.N + 1

    def refine(self, factor: int = 2) -> "Grid":
        return Grid(self.T, self.N * factor)


@dataclass
class SampledFunction:
    """Values (and optionally derivative values) of a function on a :class:`Grid`.

    ``t0`` records how ``values[0]`` should be read; ``notes`` collects
    accuracy warnings attached by the routine that produced the samples.
    """

    grid: Grid
    values: np.ndarray
    deriv_values: np.ndarray | None = None
    t0: str = T0_VALUE
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.N + 1,):
            raise DomainError(
                f"expected {self.grid.N + 1} values, got shape {self.values.shape}"
            )
        if self.deriv_values is not None:
            self.deriv_values = np.asarray(self.deriv_values, dtype=float)
            if self.deriv_values.shape != self.values.shape:
                raise DomainError("deriv_values must have the same length as values")
        if self.t0 not in (T0_VALUE, T0_LIMIT, T0_UNBOUNDED):
            raise DomainError(f"unknown t0 flag {self.t0!r}")

    @property
    def t(self) -> np.ndarray:
        return self.grid.nodes

    def with_values(self, values, t0: str | None = None, notes=()) -> "SampledFunction":
        """Same grid, new values; derivative samples are dropped."""
        return replace(self, values=values, deriv_values=None,
                       t0=self.t0 if t0 is None else t0,
                       notes=list(self.notes) + list(notes))

    def interior(self) -> np.ndarray:
        """Values at t > 0."""
        return self.values[1:]

    # {{{ csv

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        has_d = self.deriv_values is not None
        w.writerow(["t", "value", "deriv"] if has_d else ["t", "value"])
        for j, tj in enumerate(self.t):
            row = [repr(float(tj)), repr(float(self.values[j]))]
            if has_d:
                row.append(repr(float(self.deriv_values[j])))
            w.writerow(row)
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text

    @classmethod
    def from_csv(cls, source) -> "SampledFunction":
        """Read a ``t,value[,deriv]`` table; the nodes must be uniform from 0."""
        text = Path(source).read_text() if not isinstance(source, io.StringIO) else source.getvalue()
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or [c.strip() for c in rows[0][:2]] != ["t", "value"]:
            raise DomainError("CSV header must start with t,value")
        header = [c.strip() for c in rows[0]]
        data = np.array([[float(c) for c in r] for r in rows[1:] if r], dtype=float)
        if data.ndim != 2 or data.shape[0] < 2:
            raise DomainError("CSV needs at least two data rows")
        t = data[:, 0]
        N = len(t) - 1
        grid = Grid(t[-1], N)
        if abs(t[0]) > 1e-12 * grid.T or np.max(np.abs(t - grid.nodes)) > 1e-9 * grid.T:
            raise DomainError("CSV nodes must form a uniform grid starting at t=0")
        deriv = data[:, 2] if "deriv" in header and data.shape[1] > 2 else None
        return cls(grid, data[:, 1], deriv)

    # }}}
