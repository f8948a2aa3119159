from __future__ import annotations

import random
from itertools import permutations

import pytest

from latrep import boolean_algebra, chain, divisor_lattice, validate_lattice
from latrep.core import Lattice


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)


@pytest.fixture(scope="session")
def bool2() -> Lattice:
    return boolean_algebra(2)


@pytest.fixture(scope="session")
def chain3() -> Lattice:
    return chain(3)


@pytest.fixture(scope="session")
def div12() -> Lattice:
    return divisor_lattice(12)


def make_m3() -> Lattice:
    return validate_lattice(
        ["0", "p", "q", "r", "1"],
        [("0", "p"), ("0", "q"), ("0", "r"), ("p", "1"), ("q", "1"), ("r", "1")])


def make_n5() -> Lattice:
    return validate_lattice(
        ["0", "a", "c", "b", "1"],
        [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])


@pytest.fixture(scope="session")
def m3() -> Lattice:
    return make_m3()


@pytest.fixture(scope="session")
def n5() -> Lattice:
    return make_n5()


def find_isomorphism(l1: Lattice, l2: Lattice) -> tuple[int, ...] | None:
    """Brute-force order isomorphism between small lattices (n <= 8)."""
    if l1.n != l2.n:
        return None
    assert l1.n <= 8, "brute-force isomorphism is for tiny lattices only"
    profile1 = [len(l1.down_lists[x]) for x in l1.elements]
    profile2 = [len(l2.down_lists[x]) for x in l2.elements]
    if sorted(profile1) != sorted(profile2):
        return None
    for perm in permutations(range(l1.n)):
        if any(profile1[x] != profile2[perm[x]] for x in l1.elements):
            continue
        if all(bool(l1.leq[a, b]) == bool(l2.leq[perm[a], perm[b]])
               for a in l1.elements for b in l1.elements):
            return perm
    return None
