from __future__ import annotations

import pytest

from latrep import (
    ErrorPair,
    LatticeMap,
    boolean_algebra,
    brute_force_envelope,
    chain,
    check_approx_join,
    check_join_hom,
    divisor_lattice,
    lower_envelope,
    stabilize_join,
    upper_envelope,
    validate_error_pair,
)
from latrep.corpus import (
    corpus_lattices,
    error_pair_instances,
    random_join_hom,
    random_map,
)
from latrep.errors import ConditionViolated, InvalidElement, NotDistributive

from conftest import make_m3


def running_sup_pair(f: LatticeMap) -> ErrorPair:
    """phi constant bottom, psi(x,y) = sup f[down(x)] ∨ sup f[down(y)]."""
    y = f.codomain
    big = [y.sup_set([f.values[z] for z in f.domain.down_lists[x]])
           for x in f.domain.elements]
    n = f.domain.n
    phi = ((y.bottom,) * n,) * n
    psi = tuple(tuple(y.join(big[a], big[b]) for b in range(n)) for a in range(n))
    return ErrorPair(f.domain, y, phi, psi)


def test_error_pair_shape_validation(chain3):
    with pytest.raises(InvalidElement):
        ErrorPair(chain3, chain3, ((0, 0), (0, 0)), ((0,) * 3,) * 3)
    with pytest.raises(InvalidElement):
        ErrorPair(chain3, chain3, ((9, 0, 0),) * 3, ((0,) * 3,) * 3)


def test_validate_error_pair_constants(chain3):
    validate_error_pair(ErrorPair.constants(chain3, chain3, 0, 2))


def test_validate_error_pair_running_sup_psi(rng, chain3):
    # the canonical psi built from running sups satisfies the growth condition
    for _ in range(10):
        f = random_map(rng, chain3, chain(4))
        validate_error_pair(running_sup_pair(f))


def test_validate_error_pair_witness(chain3):
    f = LatticeMap(chain3, chain3, (1, 0, 2))
    ep = running_sup_pair(f)
    psi = [list(row) for row in ep.psi]
    psi[2][2] = 0  # drop one diagonal value below psi(0,1)
    bad = ErrorPair(chain3, chain3, ep.phi, tuple(map(tuple, psi)))
    with pytest.raises(ConditionViolated) as exc:
        validate_error_pair(bad)
    assert exc.value.which == "psi(x,y)<=psi(z,z)"
    x, y, z = exc.value.witness
    assert chain3.le(x, z) and chain3.le(y, z)
    assert not chain3.le(bad.psi[x][y], bad.psi[z][z])


def test_check_approx_join_examples(chain3):
    h = LatticeMap(chain3, chain3, (0, 1, 2))
    assert check_approx_join(h, ErrorPair.constants(chain3, chain3, 0, 0))
    f = LatticeMap(chain3, chain3, (1, 0, 2))
    assert check_approx_join(f, running_sup_pair(f))
    chk = check_approx_join(f, ErrorPair.constants(chain3, chain3, 0, 0))
    assert not chk and chk.which == "approx-join-upper" and chk.witness == (0, 1)


def test_envelopes_of_join_hom_are_f(rng):
    for _ in range(15):
        lats = [lat for _, lat in corpus_lattices(10)]
        x, y = rng.choice(lats), rng.choice(lats)
        h = random_join_hom(rng, x, y)
        assert lower_envelope(h).values == h.values
        assert upper_envelope(h).values == h.values


def test_envelope_chain_example(chain3):
    f = LatticeMap(chain3, chain3, (1, 0, 2))
    assert lower_envelope(f).values == (1, 0, 2)
    assert upper_envelope(f).values == (1, 1, 2)


def test_envelopes_match_oracle_on_divisor_lattice(rng):
    lam6 = divisor_lattice(6)
    for _ in range(25):
        f = random_map(rng, lam6, lam6)
        assert lower_envelope(f).values == brute_force_envelope(f, "lower").values
        assert upper_envelope(f).values == brute_force_envelope(f, "upper").values


def test_envelope_requires_distributive_codomain(chain3):
    m3 = make_m3()
    f = LatticeMap(chain3, m3, (0, 1, 4))
    with pytest.raises(NotDistributive):
        lower_envelope(f)


def test_stabilize_exact_join_hom_fixed(rng):
    x, y = boolean_algebra(2), chain(3)
    h = random_join_hom(rng, x, y)
    ep = ErrorPair.constants(x, y, y.bottom, y.bottom)
    assert stabilize_join(h, ep).values == h.values


def test_stabilize_chain_example(chain3):
    f = LatticeMap(chain3, chain3, (1, 0, 2))
    result = stabilize_join(f, running_sup_pair(f))
    assert result.values == (1, 1, 2)
    assert check_join_hom(result)


def test_stabilize_property_small(rng):
    for f, ep in error_pair_instances(rng, 60, max_size=10):
        y = f.codomain
        result = stabilize_join(f, ep)
        assert check_join_hom(result)
        for x in f.domain.elements:
            lo = y.meet(ep.phi[x][x], f.values[x])
            hi = y.join(f.values[x], ep.psi[x][x])
            assert y.le(lo, result.values[x]) and y.le(result.values[x], hi)


def test_stabilize_rejects_bad_hypotheses(chain3):
    f = LatticeMap(chain3, chain3, (1, 0, 2))
    with pytest.raises(ConditionViolated):
        stabilize_join(f, ErrorPair.constants(chain3, chain3, 0, 0))
    m3 = make_m3()
    g = LatticeMap(m3, m3, tuple(m3.elements))
    with pytest.raises(NotDistributive):
        stabilize_join(g, ErrorPair.constants(m3, m3, m3.bottom, m3.top))


def test_envelope_bounds_nine_ten(rng):
    # phi(x,x)∧f(x) <= Phi(x) <= f(x) and f(x) <= Psi(x) <= f(x)∨psi(x,x)
    for f, ep in error_pair_instances(rng, 40, max_size=10):
        y = f.codomain
        lo_env = lower_envelope(f)
        hi_env = upper_envelope(f)
        for x in f.domain.elements:
            assert y.le(y.meet(ep.phi[x][x], f.values[x]), lo_env.values[x])
            assert y.le(lo_env.values[x], f.values[x])
            assert y.le(f.values[x], hi_env.values[x])
            assert y.le(hi_env.values[x], y.join(f.values[x], ep.psi[x][x]))


def test_induction_inequality_on_decompositions(rng):
    # for every decomposition x = sup S found by subset enumeration:
    # phi(x,x) ∧ f(x) <= f(s1)∨...∨f(sk) <= f(x) ∨ psi(x,x)
    for f, ep in error_pair_instances(rng, 12, max_size=8):
        x_lat, y = f.domain, f.codomain
        for x in x_lat.elements:
            dmask = x_lat.down_masks[x]
            s = dmask
            while s:
                members = [i for i in x_lat.elements if s >> i & 1]
                if x_lat.sup_set(members) == x:
                    v = y.sup_set([f.values[i] for i in members])
                    assert y.le(y.meet(ep.phi[x][x], f.values[x]), v)
                    assert y.le(v, y.join(f.values[x], ep.psi[x][x]))
                s = (s - 1) & dmask
