"""Independent brute-force verifiers for the constructive modules.

These enumerate rather than construct: envelope values from every subset
decomposition, join homomorphisms from every candidate map, and the naive
Boolean "subtract the error" correction.  Budgets are hard caps with
explicit errors; an oracle that silently samples is not an oracle.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product as iter_product
from typing import Iterator

from .core import Lattice
from .errors import (
    HypothesisViolated,
    NotBooleanCodomain,
    SearchBudgetExceeded,
    SizeLimit,
)
from .maps import LatticeMap, check_join_hom, check_meet_hom, check_monotone

DEFAULT_BUDGET = 10 ** 6
_ENVELOPE_MAX = 16


@lru_cache(maxsize=64)
def _subset_sups(lattice: Lattice) -> tuple[int, ...]:
    """sup of every nonempty subset, indexed by bitmask (index 0 unused)."""
    jt = lattice.join_table
    size = 1 << lattice.n
    sups = [0] * size
    for m in range(1, size):
        low = (m & -m).bit_length() - 1
        rest = m ^ (1 << low)
        sups[m] = low if rest == 0 else int(jt[sups[rest], low])
    return tuple(sups)


def brute_force_envelope(f: LatticeMap, mode: str) -> LatticeMap:
    """Envelope by enumerating all subsets S of down(x) with sup S = x.

    mode is "lower" (infimum of the f-joins) or "upper" (supremum).
    Requires |domain| <= 16.
    """
    if mode not in ("lower", "upper"):
        raise ValueError(f"mode must be 'lower' or 'upper', got {mode!r}")
    x_lat, y_lat = f.domain, f.codomain
    if x_lat.n > _ENVELOPE_MAX:
        raise SizeLimit("brute_force_envelope", x_lat.n, _ENVELOPE_MAX)
    sups = _subset_sups(x_lat)
    jt = y_lat.join_table
    size = 1 << x_lat.n
    fjoin = [0] * size
    for m in range(1, size):
        low = (m & -m).bit_length() - 1
        rest = m ^ (1 << low)
        v = f.values[low]
        fjoin[m] = v if rest == 0 else int(jt[fjoin[rest], v])
    fold = y_lat.meet_table if mode == "lower" else jt
    values = []
    for x in x_lat.elements:
        dmask = x_lat.down_masks[x]
        acc = None
        s = dmask
        while s:
            if sups[s] == x:
                acc = fjoin[s] if acc is None else int(fold[acc, fjoin[s]])
            s = (s - 1) & dmask
        assert acc is not None  # {x} itself always decomposes x
        values.append(acc)
    return LatticeMap(x_lat, y_lat, tuple(values))


def iter_join_homs(x_lat: Lattice, y_lat: Lattice,
                   budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """All join-homomorphism value tuples in lexicographic order."""
    total = y_lat.n ** x_lat.n
    if total > budget:
        raise SearchBudgetExceeded(budget)
    pairs = [(a, b, int(x_lat.join_table[a, b]))
             for a in x_lat.elements for b in range(a + 1, x_lat.n)]
    jt = y_lat.join_table
    for vals in iter_product(range(y_lat.n), repeat=x_lat.n):
        if all(vals[j] == int(jt[vals[a], vals[b]]) for a, b, j in pairs):
            yield vals


def enumerate_join_homs(x_lat: Lattice, y_lat: Lattice,
                        budget: int = DEFAULT_BUDGET) -> list[LatticeMap]:
    """All join homomorphisms X -> Y, deterministic order; budget-capped."""
    return [LatticeMap(x_lat, y_lat, vals) for vals in iter_join_homs(x_lat, y_lat, budget)]


def sandwich_exists_brute(phi: LatticeMap, psi: LatticeMap,
                          budget: int = DEFAULT_BUDGET) -> LatticeMap | None:
    """First join homomorphism F with phi <= F <= psi found by enumeration."""
    leq = phi.codomain.leq
    for vals in iter_join_homs(phi.domain, phi.codomain, budget):
        if all(leq[p, v] and leq[v, q]
               for p, v, q in zip(phi.values, vals, psi.values)):
            return LatticeMap(phi.domain, phi.codomain, vals)
    return None


def complement_table(lattice: Lattice) -> tuple[int, ...] | None:
    """Complement of every element, or None if the lattice is not Boolean.

    Boolean here means: nonempty, distributive, bounded, and every element
    has a (then unique) complement.
    """
    if lattice.n == 0 or not lattice.has_bottom or not lattice.has_top:
        return None
    if not lattice.is_distributive:
        return None
    jt, mt = lattice.join_table, lattice.meet_table
    bot, top = lattice.bottom, lattice.top
    comp = []
    for a in lattice.elements:
        found = [b for b in lattice.elements
                 if int(jt[a, b]) == top and int(mt[a, b]) == bot]
        if not found:
            return None
        assert len(found) == 1, "complement not unique in a distributive lattice"
        comp.append(found[0])
    return tuple(comp)


def naive_boolean_correction(f: LatticeMap, eps_element: int) -> tuple[LatticeMap, dict]:
    """The one-line correction g(x) = f(x) \\ ε on a Boolean codomain.

    Requires f(x∨y) △ (f(x)∨f(y)) <= ε for all pairs (△ is symmetric
    difference, \\ relative complement); the hypothesis is checked.  Returns
    g together with a report: g is then a join homomorphism with
    f(x) △ g(x) <= ε, while the meet-homomorphism status is reported but not
    asserted.
    """
    y_lat = f.codomain
    comp = complement_table(y_lat)
    if comp is None:
        raise NotBooleanCodomain("no complement table")
    eps = y_lat._check(eps_element)
    jt, mt, leq = y_lat.join_table, y_lat.meet_table, y_lat.leq

    def minus(a: int, b: int) -> int:
        return int(mt[a, comp[b]])

    def symdiff(a: int, b: int) -> int:
        return int(jt[minus(a, b), minus(b, a)])

    for x in f.domain.elements:
        for y in f.domain.elements:
            fj = f.values[f.domain.join(x, y)]
            d = symdiff(fj, int(jt[f.values[x], f.values[y]]))
            if not leq[d, eps]:
                raise HypothesisViolated("join-closeness", (x, y))

    g = LatticeMap(f.domain, y_lat, tuple(minus(v, eps) for v in f.values))
    diffs = [symdiff(fv, gv) for fv, gv in zip(f.values, g.values)]
    max_diff = y_lat.sup_set(diffs) if diffs else y_lat.bottom
    report = {
        "join_hom": check_join_hom(g),
        "meet_hom": check_meet_hom(g),
        "monotone": check_monotone(g),
        "max_symmetric_difference": max_diff,
        "max_symmetric_difference_label": y_lat.labels[max_diff] if y_lat.n else None,
        "within_eps": bool(leq[max_diff, eps]),
    }
    return g, report
