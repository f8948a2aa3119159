"""Total maps between lattices and checkers for the conditions they may satisfy.

Every checker returns a :class:`~latrep.core.Check`; witnesses are the
lexicographically first violating tuple of element ids, so failures are
deterministic and reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Check, Lattice
from .errors import DomainMismatch, InvalidElement


@dataclass(frozen=True)
class LatticeMap:
    """A total function between two lattices, stored as an id-indexed tuple."""

    domain: Lattice
    codomain: Lattice
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.domain.n:
            raise InvalidElement(f"map has {len(self.values)} values for {self.domain.n} elements",
                                 self.domain.n)
        for v in self.values:
            if not 0 <= v < self.codomain.n:
                raise InvalidElement(v, self.codomain.n)

    def __call__(self, x: int) -> int:
        return self.values[self.domain._check(x)]

    def _value_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int32)


def identity_map(lattice: Lattice) -> LatticeMap:
    return LatticeMap(lattice, lattice, tuple(lattice.elements))


def constant_map(domain: Lattice, codomain: Lattice, value: int) -> LatticeMap:
    return LatticeMap(domain, codomain, (codomain._check(value),) * domain.n)


def _first_pair(mask: np.ndarray) -> tuple[int, int] | None:
    where = np.argwhere(mask)
    if len(where) == 0:
        return None
    x, y = where[0]
    return (int(x), int(y))


def _pair_tables(m: LatticeMap) -> tuple[np.ndarray, np.ndarray]:
    """(f(x∨y), f(x)∨f(y)) as n×n arrays."""
    v = m._value_array()
    f_of_join = v[m.domain.join_table]
    join_of_f = m.codomain.join_table[v[:, None], v[None, :]]
    return f_of_join, join_of_f


def _meet_pair_tables(m: LatticeMap) -> tuple[np.ndarray, np.ndarray]:
    v = m._value_array()
    f_of_meet = v[m.domain.meet_table]
    meet_of_f = m.codomain.meet_table[v[:, None], v[None, :]]
    return f_of_meet, meet_of_f


def check_join_hom(m: LatticeMap) -> Check:
    """f(x∨y) == f(x)∨f(y) for all pairs."""
    a, b = _pair_tables(m)
    w = _first_pair(a != b)
    return Check(w is None, "join-hom", w)


def check_meet_hom(m: LatticeMap) -> Check:
    """f(x∧y) == f(x)∧f(y) for all pairs."""
    a, b = _meet_pair_tables(m)
    w = _first_pair(a != b)
    return Check(w is None, "meet-hom", w)


def check_monotone(m: LatticeMap) -> Check:
    """x <= y implies f(x) <= f(y)."""
    v = m._value_array()
    fleq = m.codomain.leq[v[:, None], v[None, :]]
    w = _first_pair(m.domain.leq & ~fleq)
    return Check(w is None, "monotone", w)


def check_sub_join(m: LatticeMap) -> Check:
    """f(x∨y) <= f(x)∨f(y) for all pairs."""
    a, b = _pair_tables(m)
    ok = m.codomain.leq[a.ravel(), b.ravel()].reshape(a.shape)
    w = _first_pair(~ok)
    return Check(w is None, "sub-join", w)


def check_super_join(m: LatticeMap) -> Check:
    """f(x∨y) >= f(x)∨f(y) for all pairs."""
    a, b = _pair_tables(m)
    ok = m.codomain.leq[b.ravel(), a.ravel()].reshape(a.shape)
    w = _first_pair(~ok)
    return Check(w is None, "super-join", w)


def check_sub_meet(m: LatticeMap) -> Check:
    """f(x∧y) <= f(x)∧f(y) for all pairs."""
    a, b = _meet_pair_tables(m)
    ok = m.codomain.leq[a.ravel(), b.ravel()].reshape(a.shape)
    w = _first_pair(~ok)
    return Check(w is None, "sub-meet", w)


def check_super_meet(m: LatticeMap) -> Check:
    """f(x∧y) >= f(x)∧f(y) for all pairs."""
    a, b = _meet_pair_tables(m)
    ok = m.codomain.leq[b.ravel(), a.ravel()].reshape(a.shape)
    w = _first_pair(~ok)
    return Check(w is None, "super-meet", w)


def require_same_spaces(*ms: LatticeMap) -> None:
    """Structural equality suffices: labels fix the id order."""
    first = ms[0]
    for m in ms[1:]:
        if m.domain != first.domain:
            raise DomainMismatch("different domain lattices")
        if m.codomain != first.codomain:
            raise DomainMismatch("different codomain lattices")


def pointwise_leq(m1: LatticeMap, m2: LatticeMap) -> Check:
    """m1(x) <= m2(x) for every x; witness is the single offending element."""
    require_same_spaces(m1, m2)
    ok = m1.codomain.leq[m1._value_array(), m2._value_array()]
    bad = np.nonzero(~ok)[0]
    if len(bad):
        return Check(False, "pointwise-leq", (int(bad[0]),))
    return Check(True, "pointwise-leq")
