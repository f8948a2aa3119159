"""Constructors for standard lattices and the prime divisor embedding."""
from __future__ import annotations

import math
from functools import reduce

import numpy as np

from .core import Lattice
from .errors import NotDistributive, SizeLimit
from .maps import LatticeMap, check_join_hom, check_meet_hom

MAX_ELEMENTS = 4096


def boolean_algebra(k: int) -> Lattice:
    """Lattice of all subsets of {1..k}; join is union, meet is intersection."""
    if not 0 <= k or (1 << max(k, 0)) > MAX_ELEMENTS:
        raise SizeLimit("boolean_algebra", 2 ** k if k >= 0 else k, MAX_ELEMENTS)
    n = 1 << k
    labels = ["{" + ",".join(str(i + 1) for i in range(k) if m >> i & 1) + "}" for m in range(n)]
    m = np.arange(n)
    leq = (m[:, None] & ~m[None, :]) == 0
    join = m[:, None] | m[None, :]
    meet = m[:, None] & m[None, :]
    return Lattice(labels, leq, join, meet)


def divisor_lattice(n: int) -> Lattice:
    """Divisors of n ordered by divisibility; join is lcm, meet is gcd."""
    if not 1 <= n <= 10 ** 6:
        raise SizeLimit("divisor_lattice", n, 10 ** 6)
    divs = sorted(d for d in range(1, n + 1) if n % d == 0)
    if len(divs) > MAX_ELEMENTS:
        raise SizeLimit("divisor_lattice", len(divs), MAX_ELEMENTS)
    idx = {d: i for i, d in enumerate(divs)}
    size = len(divs)
    leq = np.zeros((size, size), dtype=bool)
    join = np.zeros((size, size), dtype=np.int32)
    meet = np.zeros((size, size), dtype=np.int32)
    for i, a in enumerate(divs):
        for j, b in enumerate(divs):
            leq[i, j] = b % a == 0
            g = math.gcd(a, b)
            meet[i, j] = idx[g]
            join[i, j] = idx[a * b // g]
    return Lattice([str(d) for d in divs], leq, join, meet)


def chain(k: int) -> Lattice:
    """Total order 0 < 1 < ... < k-1; join is max, meet is min."""
    if k < 1:
        raise SizeLimit("chain", k, "k >= 1")
    m = np.arange(k)
    leq = m[:, None] <= m[None, :]
    join = np.maximum(m[:, None], m[None, :])
    meet = np.minimum(m[:, None], m[None, :])
    return Lattice([str(i) for i in range(k)], leq, join, meet)


def product(l1: Lattice, l2: Lattice) -> Lattice:
    """Componentwise-ordered product; element (i, j) gets id i*|l2| + j."""
    n1, n2 = l1.n, l2.n
    if n1 * n2 > MAX_ELEMENTS:
        raise SizeLimit("product", n1 * n2, MAX_ELEMENTS)
    labels = [f"({a},{b})" for a in l1.labels for b in l2.labels]
    leq = np.kron(l1.leq, l2.leq)
    ones1 = np.ones((n1, n1), dtype=np.int32)
    ones2 = np.ones((n2, n2), dtype=np.int32)
    join = np.kron(l1.join_table, ones2) * n2 + np.kron(ones1, l2.join_table)
    meet = np.kron(l1.meet_table, ones2) * n2 + np.kron(ones1, l2.meet_table)
    return Lattice(labels, leq, join, meet)


def join_irreducibles(lattice: Lattice) -> tuple[int, ...]:
    """Non-bottom elements that are not the join of two strictly smaller ones.

    In a finite lattice these are exactly the elements with a single lower
    cover; returned in ascending id order.
    """
    lower_covers: dict[int, int] = {x: 0 for x in lattice.elements}
    for child, parent in lattice.covers():
        lower_covers[parent] += 1
    return tuple(x for x in lattice.elements if lower_covers[x] == 1)


def _first_primes(k: int) -> list[int]:
    primes: list[int] = []
    cand = 2
    while len(primes) < k:
        if all(cand % p for p in primes):
            primes.append(cand)
        cand += 1
    return primes


def birkhoff_embedding(lattice: Lattice) -> tuple[int, LatticeMap]:
    """Embed a finite distributive lattice into a divisor lattice.

    The i-th join-irreducible (ascending id) is assigned the i-th prime;
    an element maps to the product of the primes of the irreducibles below
    it.  Returns (n, H) with H an injective lattice homomorphism into
    divisor_lattice(n); both properties are verified before returning.
    """
    chk = lattice.check_distributive()
    if not chk:
        raise NotDistributive("domain", chk.witness)
    ji = join_irreducibles(lattice)
    if (1 << len(ji)) > MAX_ELEMENTS:
        raise SizeLimit("birkhoff_embedding", 2 ** len(ji), MAX_ELEMENTS)
    primes = _first_primes(len(ji))
    n = reduce(lambda a, b: a * b, primes, 1)
    target = divisor_lattice(n)
    values = []
    for y in lattice.elements:
        v = 1
        for j, p in zip(ji, primes):
            if lattice.le(j, y):
                v *= p
        values.append(target.id_of(str(v)))
    h = LatticeMap(lattice, target, tuple(values))
    assert len(set(values)) == lattice.n, "embedding not injective"
    assert check_join_hom(h) and check_meet_hom(h), "embedding not a lattice homomorphism"
    return n, h
