"""Seeded instance generators backing the property and acceptance suites.

Lattices come from the builders (chains, Boolean algebras, divisor
lattices, small products); maps are generated constructively so that the
construction hypotheses hold, then re-verified with the independent checkers;
rejection sampling with a fixed seed keeps everything reproducible.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator

from . import maps as _maps
from .builders import boolean_algebra, chain, divisor_lattice, join_irreducibles, product
from .core import Lattice
from .errors import ConditionViolated
from .maps import LatticeMap
from .neighborhoods import (
    Congruence,
    NeighborhoodSystem,
    check_neighborhood_approx,
    congruence_system,
    principal_ideal_system,
    prime_support_system,
)
from .stabilize import ErrorPair, check_approx_join, lower_envelope, upper_envelope, validate_error_pair


@lru_cache(maxsize=8)
def corpus_lattices(max_size: int = 16) -> tuple[tuple[str, Lattice], ...]:
    """The named desk-scale lattice corpus: all entries are distributive."""
    base: list[tuple[str, Lattice]] = []
    for k in range(1, 7):
        base.append((f"chain{k}", chain(k)))
    for k in range(0, 4):
        base.append((f"bool{k}", boolean_algebra(k)))
    for n in (6, 12, 30, 60):
        base.append((f"div{n}", divisor_lattice(n)))
    out = [(name, lat) for name, lat in base if lat.n <= max_size]
    small = [(name, lat) for name, lat in base if 2 <= lat.n <= 8]
    for i, (n1, l1) in enumerate(small):
        for n2, l2 in small[i:]:
            if l1.n * l2.n <= max_size and l1.n > 1 and l2.n > 1:
                out.append((f"{n1}x{n2}", product(l1, l2)))
    return tuple(out)


def random_map(rng: random.Random, x_lat: Lattice, y_lat: Lattice) -> LatticeMap:
    return LatticeMap(x_lat, y_lat, tuple(rng.randrange(y_lat.n) for _ in x_lat.elements))


def random_monotone_map(rng: random.Random, x_lat: Lattice, y_lat: Lattice) -> LatticeMap:
    """Fill along a linear extension, choosing each image above the forced join."""
    values = [-1] * x_lat.n
    lower_covers: dict[int, list[int]] = {x: [] for x in x_lat.elements}
    for c, p in x_lat.covers():
        lower_covers[p].append(c)
    for x in x_lat.by_downset_size:
        floor = y_lat.sup_set([values[c] for c in lower_covers[x]]) if lower_covers[x] \
            else (y_lat.bottom if rng.random() < 0.3 else rng.randrange(y_lat.n))
        values[x] = rng.choice(y_lat.up_lists[floor])
    m = LatticeMap(x_lat, y_lat, tuple(values))
    assert _maps.check_monotone(m)
    return m


def random_join_hom(rng: random.Random, x_lat: Lattice, y_lat: Lattice) -> LatticeMap:
    """Random images on the join-irreducibles, extended by joins (X distributive)."""
    ji = join_irreducibles(x_lat)
    images = {j: rng.randrange(y_lat.n) for j in ji}
    values = []
    for x in x_lat.elements:
        values.append(y_lat.sup_set([images[j] for j in ji if x_lat.le(j, x)]))
    m = LatticeMap(x_lat, y_lat, tuple(values))
    assert _maps.check_join_hom(m)
    return m


def running_sup_map(f: LatticeMap) -> LatticeMap:
    """x -> sup f[down(x)]: monotone and super-join."""
    vals = tuple(f.codomain.sup_set([f.values[z] for z in f.domain.down_lists[x]])
                 for x in f.domain.elements)
    return LatticeMap(f.domain, f.codomain, vals)


def running_inf_map(f: LatticeMap) -> LatticeMap:
    """x -> inf f[down(x)]: antitone, hence sub-join."""
    vals = tuple(f.codomain.inf_set([f.values[z] for z in f.domain.down_lists[x]])
                 for x in f.domain.elements)
    return LatticeMap(f.domain, f.codomain, vals)


def pointwise_join(f: LatticeMap, g: LatticeMap) -> LatticeMap:
    _maps.require_same_spaces(f, g)
    jt = f.codomain.join_table
    return LatticeMap(f.domain, f.codomain,
                      tuple(int(jt[a, b]) for a, b in zip(f.values, g.values)))


def _space_cycle(rng: random.Random, max_size: int = 16):
    lats = [lat for _, lat in corpus_lattices(max_size)]
    while True:
        yield rng.choice(lats), rng.choice(lats)


def sandwich_instances(rng: random.Random, count: int,
                       max_size: int = 16) -> Iterator[tuple[LatticeMap, LatticeMap]]:
    """Hypothesis-satisfying (phi, psi) pairs for the sandwich construction."""
    spaces = _space_cycle(rng, max_size)
    produced = 0
    kind = 0
    while produced < count:
        x_lat, y_lat = next(spaces)
        f = random_map(rng, x_lat, y_lat)
        if kind == 0:
            phi, psi = lower_envelope(f), upper_envelope(f)
        elif kind == 1:
            g = random_map(rng, x_lat, y_lat)
            phi, psi = lower_envelope(f), upper_envelope(pointwise_join(f, g))
        elif kind == 2:
            h = random_join_hom(rng, x_lat, y_lat)
            phi = h
            psi = upper_envelope(pointwise_join(h, random_map(rng, x_lat, y_lat)))
        else:
            phi = running_inf_map(f)
            psi = upper_envelope(pointwise_join(f, random_map(rng, x_lat, y_lat)))
        kind = (kind + 1) % 4
        if not (_maps.pointwise_leq(phi, psi) and _maps.check_sub_join(phi)
                and _maps.check_super_join(psi)):
            continue
        produced += 1
        yield phi, psi


def envelope_error_pair(f: LatticeMap) -> ErrorPair:
    """The canonical valid pair: phi(x,y) = m(x)∧m(y), psi(x,y) = M(x)∨M(y)
    with m/M the running inf/sup of f over down-sets."""
    m = running_inf_map(f).values
    big = running_sup_map(f).values
    y_lat = f.codomain
    mt, jt = y_lat.meet_table, y_lat.join_table
    n = f.domain.n
    phi = tuple(tuple(int(mt[m[x], m[y]]) for y in range(n)) for x in range(n))
    psi = tuple(tuple(int(jt[big[x], big[y]]) for y in range(n)) for x in range(n))
    return ErrorPair(f.domain, y_lat, phi, psi)


def error_pair_instances(rng: random.Random, count: int,
                         max_size: int = 16) -> Iterator[tuple[LatticeMap, ErrorPair]]:
    """(f, error-pair) instances satisfying all stabilization hypotheses."""
    spaces = _space_cycle(rng, max_size)
    produced = 0
    kind = 0
    while produced < count:
        x_lat, y_lat = next(spaces)
        if kind == 0:
            f = random_map(rng, x_lat, y_lat)
            ep = envelope_error_pair(f)
        elif kind == 1:
            f = random_join_hom(rng, x_lat, y_lat)
            ep = ErrorPair.constants(x_lat, y_lat, y_lat.bottom, y_lat.bottom)
        elif kind == 2:
            f = random_map(rng, x_lat, y_lat)
            ep = ErrorPair.constants(x_lat, y_lat, y_lat.bottom, y_lat.top)
        else:
            f = random_map(rng, x_lat, y_lat)
            base = envelope_error_pair(f)
            phi = [list(row) for row in base.phi]
            psi = [list(row) for row in base.psi]
            for _ in range(3):  # a few random one-entry perturbations
                x, y = rng.randrange(x_lat.n), rng.randrange(x_lat.n)
                phi[x][y] = rng.choice(y_lat.down_lists[phi[x][y]])
                x, y = rng.randrange(x_lat.n), rng.randrange(x_lat.n)
                psi[x][y] = rng.choice(y_lat.up_lists[psi[x][y]])
            ep = ErrorPair(x_lat, y_lat, tuple(map(tuple, phi)), tuple(map(tuple, psi)))
        kind = (kind + 1) % 4
        try:
            validate_error_pair(ep)
        except ConditionViolated:
            continue
        if not check_approx_join(f, ep):
            continue
        produced += 1
        yield f, ep


def congruences_for(lattice: Lattice) -> list[Congruence]:
    """Canonical congruences: discrete, total, and kernels of x -> x∧a."""
    out = [Congruence(lattice, tuple(lattice.elements)),
           Congruence(lattice, (0,) * lattice.n)]
    for a in lattice.elements:
        if a in (lattice.bottom, lattice.top):
            continue
        proj = [lattice.meet(x, a) for x in lattice.elements]
        ids = {v: i for i, v in enumerate(sorted(set(proj)))}
        out.append(Congruence(lattice, tuple(ids[v] for v in proj)))
    return out


def systems_for(lattice: Lattice) -> list[tuple[str, NeighborhoodSystem]]:
    """All built-in neighborhood systems applicable to the given lattice."""
    from .builders import birkhoff_embedding

    out: list[tuple[str, NeighborhoodSystem]] = []
    out.append(("principal-ideal", principal_ideal_system(lattice)))
    labels_numeric = all(lab.isdigit() for lab in lattice.labels)
    if labels_numeric and lattice.has_top:
        n = int(lattice.labels[lattice.top])
        if n >= 1 and divisor_lattice(n) == lattice:
            out.append(("prime-support", prime_support_system(n)))
    if lattice.is_distributive and len(join_irreducibles(lattice)) <= 8:
        n, h = birkhoff_embedding(lattice)
        from .neighborhoods import pullback_system
        out.append(("pullback", pullback_system(lattice, h, prime_support_system(n))))
    for i, theta in enumerate(congruences_for(lattice)):
        out.append((f"congruence{i}", congruence_system(theta)))
    return out


def class_respecting_map(rng: random.Random, x_lat: Lattice,
                         theta_system: NeighborhoodSystem) -> LatticeMap:
    """Join homomorphism composed with a random representative of its class."""
    y_lat = theta_system.lattice
    h = random_join_hom(rng, x_lat, y_lat)
    vals = tuple(rng.choice(theta_system.members(v)) for v in h.values)
    return LatticeMap(x_lat, y_lat, vals)


def neighborhood_instances(rng: random.Random, count: int,
                           max_size: int = 16) -> Iterator[tuple[LatticeMap, NeighborhoodSystem]]:
    """(f, system) instances satisfying the membership condition."""
    lats = [lat for _, lat in corpus_lattices(max_size)]
    pool: list[tuple[NeighborhoodSystem, bool]] = []
    for lat in lats:
        for name, ns in systems_for(lat):
            pool.append((ns, name.startswith("congruence")))
    produced = 0
    while produced < count:
        x_lat = rng.choice(lats)
        ns, is_congruence = rng.choice(pool)
        if is_congruence:
            f = class_respecting_map(rng, x_lat, ns)
        else:
            f = random_monotone_map(rng, x_lat, ns.lattice)
        if not check_neighborhood_approx(f, ns):
            continue
        produced += 1
        yield f, ns
