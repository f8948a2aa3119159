"""Approximately monotone functions on finite real grids and their ε/2 repair.

All arithmetic is exact rational (fractions.Fraction); the ε/2 error bound
is asserted with zero tolerance.  A function that never rises by more than
ε along the order can be shifted onto an increasing function within ε/2,
via the running maximum F(x) = max{f(z) : z <= x} and g = F - ε/2; the
decreasing case is the mirror image.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Check
from .errors import HypothesisViolated, NoRepairFound


def _q(x) -> Fraction:
    if isinstance(x, float):
        raise ValueError(f"refusing inexact float {x!r}; pass int, Fraction or 'p/q' string")
    return Fraction(x)


@dataclass(frozen=True)
class FiniteRealFunction:
    """Rational values on a finite, strictly increasing grid, with tolerance ε."""

    points: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    epsilon: Fraction

    def __post_init__(self):
        points = tuple(_q(x) for x in self.points)
        values = tuple(_q(v) for v in self.values)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "epsilon", _q(self.epsilon))
        if len(points) != len(values):
            raise ValueError(f"{len(points)} points but {len(values)} values")
        if any(a >= b for a, b in zip(points, points[1:])):
            raise ValueError("points must be strictly increasing")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], epsilon) -> "FiniteRealFunction":
        pts, vals = zip(*pairs) if pairs else ((), ())
        return cls(tuple(pts), tuple(vals), epsilon)

    def __len__(self) -> int:
        return len(self.points)


def check_eps_increasing(f: FiniteRealFunction) -> Check:
    """f(x) <= f(y) + ε for all x <= y; witness is the first offending (x, y)."""
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            if f.values[i] > f.values[j] + f.epsilon:
                return Check(False, "eps-increasing", (f.points[i], f.points[j]))
    return Check(True, "eps-increasing")


def check_eps_decreasing(f: FiniteRealFunction) -> Check:
    """f(y) <= f(x) + ε for all x <= y."""
    for i in range(len(f)):
        for j in range(i + 1, len(f)):
            if f.values[j] > f.values[i] + f.epsilon:
                return Check(False, "eps-decreasing", (f.points[i], f.points[j]))
    return Check(True, "eps-decreasing")


def check_pal(f: FiniteRealFunction) -> Check:
    """min{f(x),f(y)} - ε <= f(z) <= max{f(x),f(y)} + ε on grid triples x <= z <= y."""
    for i in range(len(f)):
        for j in range(i, len(f)):
            for k in range(j, len(f)):
                lo = min(f.values[i], f.values[k]) - f.epsilon
                hi = max(f.values[i], f.values[k]) + f.epsilon
                if f.values[j] < lo:
                    return Check(False, "pal-lower", (f.points[i], f.points[j], f.points[k]))
                if f.values[j] > hi:
                    return Check(False, "pal-upper", (f.points[i], f.points[j], f.points[k]))
    return Check(True, "pal")


def _assert_repair(f: FiniteRealFunction, g: tuple[Fraction, ...], increasing: bool) -> None:
    ordered = all(a <= b for a, b in zip(g, g[1:])) if increasing \
        else all(a >= b for a, b in zip(g, g[1:]))
    assert ordered, "repair is not monotone"
    half = f.epsilon / 2
    assert all(abs(fv - gv) <= half for fv, gv in zip(f.values, g)), \
        "repair exceeds the ε/2 bound"


def repair_increasing(f: FiniteRealFunction) -> tuple[Fraction, ...]:
    """Increasing g with |f - g| <= ε/2: running maximum shifted down by ε/2."""
    chk = check_eps_increasing(f)
    if not chk:
        raise HypothesisViolated(chk.which, chk.witness)
    half = f.epsilon / 2
    g: list[Fraction] = []
    running = None
    for v in f.values:
        running = v if running is None else max(running, v)
        g.append(running - half)
    out = tuple(g)
    _assert_repair(f, out, increasing=True)
    return out


def repair_decreasing(f: FiniteRealFunction) -> tuple[Fraction, ...]:
    """Decreasing g with |f - g| <= ε/2: right-to-left running maximum minus ε/2."""
    chk = check_eps_decreasing(f)
    if not chk:
        raise HypothesisViolated(chk.which, chk.witness)
    half = f.epsilon / 2
    g: list[Fraction] = []
    running = None
    for v in reversed(f.values):
        running = v if running is None else max(running, v)
        g.append(running - half)
    out = tuple(reversed(g))
    _assert_repair(f, out, increasing=False)
    return out


def repair_quasi_monotone(f: FiniteRealFunction) -> tuple[str, tuple[Fraction, ...]]:
    """Repair in whichever direction applies, preferring increasing.

    Requires the two-sided band condition (:func:`check_pal`).  Raises
    NoRepairFound (never silently) when neither directional hypothesis
    holds; the exception carries both witnesses.
    """
    chk = check_pal(f)
    if not chk:
        raise HypothesisViolated(chk.which, chk.witness)
    inc = check_eps_increasing(f)
    if inc:
        return "increasing", repair_increasing(f)
    dec = check_eps_decreasing(f)
    if dec:
        return "decreasing", repair_decreasing(f)
    raise NoRepairFound(inc.witness, dec.witness)


def sup_error(f: FiniteRealFunction, g: Iterable[Fraction]) -> Fraction:
    """max_x |f(x) - g(x)|, exact."""
    g = tuple(g)
    if not g:
        return Fraction(0)
    return max(abs(fv - gv) for fv, gv in zip(f.values, g))
