from __future__ import annotations

from itertools import product as iproduct

import pytest

from latrep import (
    LatticeMap,
    birkhoff_embedding,
    chain,
    check_join_hom,
    check_meet_hom,
    check_monotone,
    check_sub_join,
    check_sub_meet,
    check_super_join,
    check_super_meet,
    constant_map,
    identity_map,
    pointwise_leq,
)
from latrep.corpus import corpus_lattices, random_join_hom
from latrep.errors import DomainMismatch, InvalidElement


def test_identity_is_everything(chain3):
    m = identity_map(chain3)
    assert check_join_hom(m) and check_meet_hom(m) and check_monotone(m)
    assert check_sub_join(m) and check_super_join(m)


def test_scrambled_chain_witnesses(chain3):
    f = LatticeMap(chain3, chain3, (0, 2, 1))
    chk = check_join_hom(f)
    assert not chk and chk.witness == (1, 2)
    # the witness genuinely violates the equation
    x, y = chk.witness
    assert f(chain3.join(x, y)) != chain3.join(f(x), f(y))
    assert check_meet_hom(f).witness == (1, 2)
    assert check_monotone(f).witness == (1, 2)


def test_constant_map_is_meet_and_join_hom(chain3, bool2):
    m = constant_map(bool2, chain3, 1)
    assert check_meet_hom(m) and check_join_hom(m) and check_monotone(m)


def test_birkhoff_image_is_join_hom(bool2):
    _, h = birkhoff_embedding(bool2)
    assert check_join_hom(h)


def test_sub_and_super_join_examples(bool2):
    y = chain(3)
    phi = LatticeMap(bool2, y, (0, 1, 0, 1))
    assert check_sub_join(phi)
    psi = LatticeMap(bool2, y, (0, 0, 0, 2))
    assert check_super_join(psi)
    chk = check_sub_join(psi)
    assert not chk and chk.witness == (1, 2)


def test_every_join_hom_is_sub_super_monotone(rng):
    lats = [lat for _, lat in corpus_lattices(10)]
    for _ in range(30):
        x, y = rng.choice(lats), rng.choice(lats)
        h = random_join_hom(rng, x, y)
        assert check_sub_join(h) and check_super_join(h) and check_monotone(h)


def test_join_hom_equals_monotone_on_chains():
    x, y = chain(3), chain(4)
    for vals in iproduct(range(y.n), repeat=x.n):
        m = LatticeMap(x, y, vals)
        assert bool(check_join_hom(m)) == bool(check_monotone(m))
        assert bool(check_meet_hom(m)) == bool(check_monotone(m))


def test_sub_super_meet_checkers(bool2):
    y = chain(3)
    # (0,0,1,2) preserves meets: both one-sided conditions hold
    m = LatticeMap(bool2, y, (0, 0, 1, 2))
    assert check_sub_meet(m) and check_super_meet(m)
    bad = LatticeMap(bool2, y, (0, 1, 1, 2))  # meet(a,b)=bottom maps 0 < 1∧1
    assert check_sub_meet(bad)
    chk = check_super_meet(bad)
    assert not chk and chk.witness == (1, 2)


def test_pointwise_leq(bool2):
    y = chain(3)
    phi = LatticeMap(bool2, y, (0, 1, 0, 1))
    psi = LatticeMap(bool2, y, (0, 0, 0, 2))
    assert pointwise_leq(phi, phi)
    chk = pointwise_leq(phi, psi)
    assert not chk and chk.witness == (1,)
    bottom = constant_map(bool2, y, 0)
    assert pointwise_leq(bottom, phi)


def test_domain_mismatch(bool2, chain3):
    a = constant_map(bool2, chain3, 0)
    b = constant_map(chain3, chain3, 0)
    with pytest.raises(DomainMismatch):
        pointwise_leq(a, b)


def test_total_and_in_range(bool2, chain3):
    with pytest.raises(InvalidElement):
        LatticeMap(bool2, chain3, (0, 1, 2))  # missing one value
    with pytest.raises(InvalidElement):
        LatticeMap(bool2, chain3, (0, 1, 2, 3))  # 3 not in chain(3)


def test_structurally_equal_lattices_interoperate(chain3):
    other = chain(3)
    assert other is not chain3
    a = constant_map(chain3, chain3, 0)
    b = identity_map(other)
    assert pointwise_leq(a, b)
