"""Functions on the integer window {0, ..., x_max}.

Values are either exact Fractions or mpmath floats; arithmetic is pointwise
and window-aware.  Any access beyond the stored window raises instead of
padding, so shrinking windows surface loudly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import mpmath


class WindowError(ValueError):
    """An operation needed grid values outside the stored window."""


class GridFn:
    """Values on {0, ..., x_max} with an optional energy tag."""

    __slots__ = ("values", "energy")

    def __init__(self, values: Sequence, energy=None):
        object.__setattr__(self, "values", tuple(values))
        object.__setattr__(self, "energy", energy)
        if not self.values:
            raise WindowError("GridFn needs at least one point")

    def __setattr__(self, name, value):
        raise AttributeError("GridFn is immutable")

    @property
    def x_max(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, x: int):
        if not 0 <= x <= self.x_max:
            raise WindowError(f"x={x} outside window [0, {self.x_max}]")
        return self.values[x]

    def __iter__(self):
        return iter(self.values)

    def with_energy(self, energy) -> "GridFn":
        return GridFn(self.values, energy)

    def truncated(self, x_max: int) -> "GridFn":
        if x_max > self.x_max:
            raise WindowError(f"cannot extend window to {x_max} (have {self.x_max})")
        return GridFn(self.values[:x_max + 1], self.energy)

    def shifted_view(self, delta: int) -> "GridFn":
        """g with g(x) = self(x + delta); window shrinks by delta."""
        if delta < 0:
            raise WindowError("negative shift would need values left of 0")
        if delta > self.x_max:
            raise WindowError(f"shift {delta} exceeds window {self.x_max}")
        return GridFn(self.values[delta:], self.energy)

    # -- pointwise arithmetic on the common window -----------------------------

    def _zip(self, other, op) -> "GridFn":
        if isinstance(other, GridFn):
            n = min(len(self.values), len(other.values))
            return GridFn([op(a, b) for a, b in zip(self.values[:n], other.values[:n])])
        return GridFn([op(a, other) for a in self.values])

    def __add__(self, other) -> "GridFn":
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other) -> "GridFn":
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other) -> "GridFn":
        return self._zip(other, lambda a, b: a * b)

    def __truediv__(self, other) -> "GridFn":
        return self._zip(other, lambda a, b: a / b)

    def __neg__(self) -> "GridFn":
        return GridFn([-a for a in self.values], self.energy)

    def map(self, fn: Callable) -> "GridFn":
        return GridFn([fn(v) for v in self.values], self.energy)

    def sup_norm(self):
        return max(abs(v) for v in self.values)

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.values[:4])
        tail = ", ..." if len(self.values) > 4 else ""
        return f"GridFn([{head}{tail}], x_max={self.x_max}, energy={self.energy})"


def sample_callable(fn: Callable[[int], object], x_max: int, energy=None) -> GridFn:
    return GridFn([fn(x) for x in range(x_max + 1)], energy)


def sample_poly_exact(poly, x_max: int, energy=None) -> GridFn:
    """Exact-rational sampling of a real-rational polynomial."""
    vals = []
    for x in range(x_max + 1):
        v = poly(x)
        if not v.is_real():
            raise ValueError("exact grid sampling needs real polynomial values")
        vals.append(v.re)
    return GridFn(vals, energy)


def grid_csv_rows(name: str, grid: GridFn, precision_bits: int | None = None):
    """Rows for CSV export: header then (x, value) pairs."""
    header = [f"x", f"{name}"]
    if precision_bits is not None:
        header[1] += f" (bits={precision_bits})"
    rows = [header]
    for x, v in enumerate(grid.values):
        if isinstance(v, Fraction):
            rows.append([str(x), f"{v.numerator}/{v.denominator}"])
        else:
            rows.append([str(x), mpmath.nstr(v, 30)])
    return rows
