"""Neighborhood systems on a lattice and stabilization relative to them.

A neighborhood system N assigns to every element z a set N(z) subject to:
(i) z ∈ N(z); (ii) each N(z) is order-convex; (iii) sup N(z) and inf N(z)
belong to N(z); (iv) t ∈ N(u) and u∨y ∈ N(z) imply t∨y ∈ N(z).  A map f
whose join defect stays inside the system, f(x)∨f(y) ∈ N(f(x∨y)), can be
repaired to an exact join homomorphism F with F(x) ∈ N(f(x)).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from . import maps as _maps
from .core import Check, Lattice
from .errors import (
    AxiomViolated,
    ConditionViolated,
    DomainMismatch,
    HypothesisViolated,
    InvalidElement,
    NoBottom,
    NotACongruence,
    NotDistributive,
    NotInjective,
)
from .builders import divisor_lattice
from .maps import LatticeMap
from .sandwich import sandwich_join
from .stabilize import lower_envelope, upper_envelope


@dataclass(frozen=True)
class NeighborhoodSystem:
    """Per-element subsets of a lattice, stored as bitmasks over element ids."""

    lattice: Lattice
    classes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(int(m) for m in self.classes))
        if len(self.classes) != self.lattice.n:
            raise InvalidElement(f"{len(self.classes)} classes for {self.lattice.n} elements",
                                 self.lattice.n)
        full = (1 << self.lattice.n) - 1
        for m in self.classes:
            if m & ~full:
                raise InvalidElement(m, self.lattice.n)

    @classmethod
    def from_sets(cls, lattice: Lattice,
                  sets: Mapping[int, Iterable[int]] | Sequence[Iterable[int]]) -> "NeighborhoodSystem":
        masks = [0] * lattice.n
        items = sets.items() if isinstance(sets, Mapping) else enumerate(sets)
        for z, members in items:
            m = 0
            for y in members:
                m |= 1 << lattice._check(y)
            masks[lattice._check(z)] = m
        return cls(lattice, tuple(masks))

    def contains(self, z: int, y: int) -> bool:
        return bool(self.classes[self.lattice._check(z)] >> self.lattice._check(y) & 1)

    def members(self, z: int) -> tuple[int, ...]:
        m = self.classes[self.lattice._check(z)]
        return tuple(y for y in self.lattice.elements if m >> y & 1)


def validate_neighborhood_system(ns: NeighborhoodSystem) -> None:
    """Exhaustively verify axioms (i)-(iv); raise AxiomViolated with a witness."""
    lat = ns.lattice
    for z in lat.elements:
        if not ns.contains(z, z):
            raise AxiomViolated("i", (z,))
    down, up = lat.down_masks, lat.up_masks
    for z in lat.elements:
        mask = ns.classes[z]
        for y in lat.elements:
            if mask >> y & 1:
                continue
            below = mask & down[y]
            above = mask & up[y]
            if below and above:
                t = (below & -below).bit_length() - 1
                u = (above & -above).bit_length() - 1
                raise AxiomViolated("ii", (z, t, y, u))
    for z in lat.elements:
        members = ns.members(z)
        if not ns.contains(z, lat.sup_set(members)):
            raise AxiomViolated("iii", (z, lat.sup_set(members)))
        if not ns.contains(z, lat.inf_set(members)):
            raise AxiomViolated("iii", (z, lat.inf_set(members)))
    # membership[w] = bitmask over z of "w ∈ N(z)"
    membership = [0] * lat.n
    for z in lat.elements:
        m = ns.classes[z]
        while m:
            w = (m & -m).bit_length() - 1
            membership[w] |= 1 << z
            m &= m - 1
    jt = lat.join_table
    for u in lat.elements:
        for t in ns.members(u):
            for y in lat.elements:
                bad = membership[int(jt[u, y])] & ~membership[int(jt[t, y])]
                if bad:
                    z = (bad & -bad).bit_length() - 1
                    raise AxiomViolated("iv", (t, u, y, z))


def principal_ideal_system(lattice: Lattice) -> NeighborhoodSystem:
    """N(z) = {y : y <= z}, the ideal generated by z.  Needs a bottom element."""
    if not lattice.has_bottom:
        raise NoBottom()
    ns = NeighborhoodSystem(lattice, lattice.down_masks)
    validate_neighborhood_system(ns)
    return ns


def prime_support_system(n: int) -> NeighborhoodSystem:
    """Over the divisors of n: N(z) = divisors whose prime factors all divide z."""
    lat = divisor_lattice(n)
    divs = [int(lab) for lab in lat.labels]

    def support(d: int) -> frozenset[int]:
        out = set()
        p = 2
        while p * p <= d:
            if d % p == 0:
                out.add(p)
                while d % p == 0:
                    d //= p
            p += 1
        if d > 1:
            out.add(d)
        return frozenset(out)

    supports = [support(d) for d in divs]
    masks = []
    for z in lat.elements:
        m = 0
        for y in lat.elements:
            if supports[y] <= supports[z]:
                m |= 1 << y
        masks.append(m)
    ns = NeighborhoodSystem(lat, tuple(masks))
    validate_neighborhood_system(ns)
    return ns


def pullback_system(lattice: Lattice, h: LatticeMap,
                    target_system: NeighborhoodSystem) -> NeighborhoodSystem:
    """Pull a validated system back along an injective lattice homomorphism.

    N(z) = {y : h(y) ∈ N_target(h(z))}; the result is re-validated before
    returning.
    """
    if h.domain != lattice:
        raise DomainMismatch("embedding does not start from the given lattice")
    if target_system.lattice != h.codomain:
        raise DomainMismatch("target system does not live on the embedding codomain")
    seen: dict[int, int] = {}
    for y, v in enumerate(h.values):
        if v in seen:
            raise NotInjective((seen[v], y))
        seen[v] = y
    for chk in (_maps.check_join_hom(h), _maps.check_meet_hom(h)):
        if not chk:
            raise HypothesisViolated(f"embedding {chk.which}", chk.witness)
    masks = []
    for z in lattice.elements:
        m = 0
        for y in lattice.elements:
            if target_system.contains(h.values[z], h.values[y]):
                m |= 1 << y
        masks.append(m)
    ns = NeighborhoodSystem(lattice, tuple(masks))
    validate_neighborhood_system(ns)
    return ns


@dataclass(frozen=True)
class Congruence:
    """A partition of a lattice compatible with join and meet."""

    lattice: Lattice
    class_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "class_of", tuple(int(c) for c in self.class_of))
        if len(self.class_of) != self.lattice.n:
            raise InvalidElement(f"partition covers {len(self.class_of)} of {self.lattice.n}",
                                 self.lattice.n)

    @classmethod
    def from_classes(cls, lattice: Lattice, classes: Iterable[Iterable[int]]) -> "Congruence":
        assign = [-1] * lattice.n
        for cid, members in enumerate(classes):
            for y in members:
                y = lattice._check(y)
                if assign[y] != -1:
                    raise InvalidElement(f"element {y} in two classes", lattice.n)
                assign[y] = cid
        if -1 in assign:
            raise InvalidElement(f"element {assign.index(-1)} not covered", lattice.n)
        return cls(lattice, tuple(assign))

    def related(self, a: int, b: int) -> bool:
        return self.class_of[self.lattice._check(a)] == self.class_of[self.lattice._check(b)]


def validate_congruence(theta: Congruence) -> None:
    """Verify compatibility with join and meet; raise with a witness quadruple.

    Compatibility with one-sided translations a∨c / a∧c is checked, which is
    equivalent to the two-sided form a≡b, c≡d ⇒ a∨c ≡ b∨d (apply it twice);
    the reported witness quadruple is (a, b, c, c).
    """
    lat = theta.lattice
    cls = theta.class_of
    jt, mt = lat.join_table, lat.meet_table
    for a in lat.elements:
        for b in range(a + 1, lat.n):
            if cls[a] != cls[b]:
                continue
            for c in lat.elements:
                if cls[int(jt[a, c])] != cls[int(jt[b, c])]:
                    raise NotACongruence((a, b, c, c), "join")
                if cls[int(mt[a, c])] != cls[int(mt[b, c])]:
                    raise NotACongruence((a, b, c, c), "meet")


def congruence_system(theta: Congruence) -> NeighborhoodSystem:
    """N(z) = the congruence class of z (classes of a finite congruence are
    convex sublattices closed under sup and inf, so the axioms hold)."""
    validate_congruence(theta)
    lat = theta.lattice
    class_masks: dict[int, int] = {}
    for y in lat.elements:
        class_masks[theta.class_of[y]] = class_masks.get(theta.class_of[y], 0) | (1 << y)
    ns = NeighborhoodSystem(lat, tuple(class_masks[theta.class_of[z]] for z in lat.elements))
    validate_neighborhood_system(ns)
    return ns


def check_neighborhood_approx(f: LatticeMap, ns: NeighborhoodSystem) -> Check:
    """Check f(x)∨f(y) ∈ N(f(x∨y)) for all pairs."""
    if ns.lattice != f.codomain:
        raise DomainMismatch("system does not live on the map codomain")
    jt_x = f.domain.join_table
    jt_y = f.codomain.join_table
    for x in f.domain.elements:
        for y in f.domain.elements:
            target = f.values[int(jt_x[x, y])]
            if not ns.contains(target, int(jt_y[f.values[x], f.values[y]])):
                return Check(False, "neighborhood-approx", (x, y))
    return Check(True, "neighborhood-approx")


def stabilize_with_neighborhoods(f: LatticeMap, ns: NeighborhoodSystem) -> LatticeMap:
    """Join homomorphism F with F(x) ∈ N(f(x)) for every x.

    Hypotheses verified: both lattices distributive, the system satisfies
    axioms (i)-(iv), and f satisfies the membership condition.  Both
    envelopes of f stay inside N(f(x)) by construction; the sandwich then
    keeps F there by convexity.
    """
    for which, lat in (("domain", f.domain), ("codomain", f.codomain)):
        chk = lat.check_distributive()
        if not chk:
            raise NotDistributive(which, chk.witness)
    validate_neighborhood_system(ns)
    chk = check_neighborhood_approx(f, ns)
    if not chk:
        raise ConditionViolated(chk.which, chk.witness)
    phi_env = lower_envelope(f)
    psi_env = upper_envelope(f)
    for x in f.domain.elements:
        assert ns.contains(f.values[x], phi_env.values[x]) \
            and ns.contains(f.values[x], psi_env.values[x]), \
            "envelopes escape the neighborhood of f(x)"
    result = sandwich_join(phi_env, psi_env)
    for x in f.domain.elements:
        assert ns.contains(f.values[x], result.values[x]), \
            "stabilized map escapes the neighborhood of f(x)"
    return result
