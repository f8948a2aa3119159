from __future__ import annotations

import pytest

from latrep import boolean_algebra, chain, divisor_lattice, validate_lattice
from latrep.corpus import corpus_lattices
from latrep.errors import CycleDetected, DuplicateLabel, EmptySet, InvalidElement, NotALattice

from conftest import find_isomorphism, make_m3, make_n5


def test_validate_four_element_boolean():
    lat = validate_lattice(["0", "a", "b", "1"],
                           [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    a, b = lat.id_of("a"), lat.id_of("b")
    assert lat.labels[lat.join(a, b)] == "1"
    assert lat.labels[lat.meet(a, b)] == "0"
    assert find_isomorphism(lat, boolean_algebra(2)) is not None


def test_validate_antichain_not_a_lattice():
    with pytest.raises(NotALattice) as exc:
        validate_lattice(["x", "y"], [])
    assert exc.value.witness == ("x", "y")
    assert "no upper bound" in str(exc.value)


def test_validate_pentagon_not_distributive():
    n5 = make_n5()
    assert not n5.is_distributive
    chk = n5.check_distributive()
    a, b, c = chk.witness
    # the witness must genuinely violate a∧(b∨c) == (a∧b)∨(a∧c)
    assert n5.meet(a, n5.join(b, c)) != n5.join(n5.meet(a, b), n5.meet(a, c))


def test_validate_errors():
    with pytest.raises(DuplicateLabel):
        validate_lattice(["x", "x"], [])
    with pytest.raises(CycleDetected):
        validate_lattice(["x", "y"], [("x", "y"), ("y", "x")])
    with pytest.raises(CycleDetected):
        validate_lattice(["x"], [("x", "x")])
    with pytest.raises(InvalidElement):
        validate_lattice(["x", "y"], [("x", "z")])


def test_join_meet_divisor_examples(div12):
    four, six = div12.id_of("4"), div12.id_of("6")
    assert div12.labels[div12.join(four, six)] == "12"
    assert div12.labels[div12.meet(four, six)] == "2"


def test_join_idempotent_everywhere():
    for _, lat in corpus_lattices(12):
        for x in lat.elements:
            assert lat.join(x, x) == x
            assert lat.meet(x, x) == x


def test_join_is_least_upper_bound(div12, bool2):
    for lat in (div12, bool2, make_m3()):
        for a in lat.elements:
            for b in lat.elements:
                j = lat.join(a, b)
                assert lat.le(a, j) and lat.le(b, j)
                for c in lat.elements:
                    if lat.le(a, c) and lat.le(b, c):
                        assert lat.le(j, c)


def test_absorption_laws():
    for _, lat in corpus_lattices(12):
        for a in lat.elements:
            for b in lat.elements:
                assert lat.join(a, lat.meet(a, b)) == a
                assert lat.meet(a, lat.join(a, b)) == a


def test_invalid_element():
    lat = chain(3)
    with pytest.raises(InvalidElement):
        lat.join(0, 5)
    with pytest.raises(InvalidElement):
        lat.id_of("7")


def test_sup_inf_sets(div12, bool2):
    two, three = div12.id_of("2"), div12.id_of("3")
    assert div12.labels[div12.sup_set([two, three])] == "6"
    assert div12.labels[div12.inf_set([two, three])] == "1"
    assert div12.sup_set([three]) == three
    assert bool2.labels[bool2.sup_set([0, 1, 2])] == "{1,2}"
    # empty sup/inf fall back to the bounds, which every nonempty finite lattice has
    assert div12.sup_set([]) == div12.bottom
    assert div12.inf_set([]) == div12.top


def test_sup_set_fold_order_independent(rng, div12):
    ids = list(div12.elements)
    for _ in range(20):
        s = rng.sample(ids, rng.randint(1, len(ids)))
        forward = div12.sup_set(s)
        assert div12.sup_set(reversed(s)) == forward
        assert div12.inf_set(reversed(s)) == div12.inf_set(s)


def test_empty_lattice():
    lat = validate_lattice([], [])
    assert lat.n == 0 and not lat.has_bottom and not lat.has_top
    with pytest.raises(EmptySet):
        lat.sup_set([])
    with pytest.raises(EmptySet):
        lat.inf_set([])


def test_check_distributive_examples():
    assert boolean_algebra(3).check_distributive().ok
    assert chain(5).check_distributive().ok
    m3 = make_m3()
    chk = m3.check_distributive()
    assert not chk and chk.witness is not None


def test_dual_infinite_distributive_examples():
    assert divisor_lattice(30).check_dual_infinite_distributive().ok
    assert chain(6).check_dual_infinite_distributive().ok
    m3 = make_m3()
    chk = m3.check_dual_infinite_distributive()
    assert not chk
    y, s = chk.witness
    lhs = m3.join(y, m3.inf_set(s))
    rhs = m3.inf_set([m3.join(y, z) for z in s])
    assert lhs != rhs


def test_dual_infinite_distributive_sampled_path():
    lat = chain(20)  # n > 16 exercises the sampled branch
    assert lat.check_dual_infinite_distributive().ok


def test_flagged_distributive_implies_dual_infinite_law():
    for name, lat in corpus_lattices(12):
        assert lat.is_distributive, name
        assert lat.check_dual_infinite_distributive().ok, name


def test_dual_involution_and_tables(div12):
    for lat in (chain(3), div12, boolean_algebra(2)):
        d = lat.dual()
        assert d.dual() == lat
        assert lat.is_distributive == d.is_distributive
    c = chain(3)
    d = c.dual()
    assert d.le(2, 0) and not d.le(0, 2)
    # dual of the divisor lattice: join becomes gcd
    dd = div12.dual()
    four, six = dd.id_of("4"), dd.id_of("6")
    assert dd.labels[dd.join(four, six)] == "2"
    assert find_isomorphism(boolean_algebra(2).dual(), boolean_algebra(2)) is not None


def test_distributivity_invariant_under_dual():
    for name, lat in corpus_lattices(10):
        assert lat.dual().is_distributive == lat.is_distributive
    assert make_m3().dual().is_distributive is False


def test_covers_round_trip():
    for _, lat in corpus_lattices(12):
        covers = [(lat.labels[c], lat.labels[p]) for c, p in lat.covers()]
        again = validate_lattice(lat.labels, covers)
        assert again == lat


def test_redundant_covers_accepted():
    lat = validate_lattice(["0", "1", "2"], [("0", "1"), ("1", "2"), ("0", "2")])
    assert lat == chain(3)
