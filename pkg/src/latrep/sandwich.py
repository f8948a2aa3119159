"""Separation ("sandwich") constructions between lattice maps.

Given a sub-join map below a super-join map on a distributive domain, an
exact join homomorphism between them always exists and is computed here as
F(x) = sup{phi(z) : z <= x}.  Order duals give three more variants, and a
backtracking search looks for full lattice homomorphisms squeezed by four
one-sided maps.
"""
from __future__ import annotations

from . import maps as _maps
from .core import Lattice
from .errors import HypothesisViolated, NotDistributive, SearchBudgetExceeded
from .maps import LatticeMap

DEFAULT_SEARCH_BUDGET = 1_000_000


def _gate(chk, name: str) -> None:
    if not chk:
        raise HypothesisViolated(name, chk.witness)


def sandwich_join(phi: LatticeMap, psi: LatticeMap) -> LatticeMap:
    """Join homomorphism F with phi <= F <= psi, built as F(x) = sup phi[down(x)].

    Hypotheses are verified before constructing (fail fast, with witnesses):
    the common domain is distributive, phi <= psi pointwise, phi is sub-join
    and psi is super-join.  The returned F is the pointwise-least join
    homomorphism dominating phi.
    """
    _maps.require_same_spaces(phi, psi)
    x_lat, y_lat = phi.domain, phi.codomain
    dist = x_lat.check_distributive()
    if not dist:
        raise NotDistributive("domain", dist.witness)
    _gate(_maps.pointwise_leq(phi, psi), "phi<=psi")
    _gate(_maps.check_sub_join(phi), "sub-join(phi)")
    _gate(_maps.check_super_join(psi), "super-join(psi)")

    jt = y_lat.join_table
    values = []
    for x in x_lat.elements:
        acc = phi.values[x]
        for z in x_lat.down_lists[x]:
            acc = int(jt[acc, phi.values[z]])
        values.append(acc)
    f = LatticeMap(x_lat, y_lat, tuple(values))
    assert _maps.check_join_hom(f), "sandwich output is not a join homomorphism"
    assert _maps.pointwise_leq(phi, f) and _maps.pointwise_leq(f, psi), \
        "sandwich output escapes its bounds"
    return f


_DOM_OP = {False: "∨", True: "∧"}
_CMP = {False: ("<=", ">="), True: (">=", "<=")}


def _variant_condition(name: str, flip_domain: bool, flip_codomain: bool) -> str:
    """Spell a sandwich_join hypothesis in the original (unflipped) order."""
    dop = _DOM_OP[flip_domain]
    cop = _DOM_OP[flip_codomain]
    le, ge = _CMP[flip_codomain]
    if name == "phi<=psi":
        return f"phi {le} psi"
    if name == "sub-join(phi)":
        return f"phi(x{dop}y) {le} phi(x){cop}phi(y)"
    if name == "super-join(psi)":
        return f"psi(x{dop}y) {ge} psi(x){cop}psi(y)"
    return name


def sandwich_variant(phi: LatticeMap, psi: LatticeMap,
                     flip_domain: bool, flip_codomain: bool) -> LatticeMap:
    """Conjugate sandwich_join by order duals of the domain and/or codomain.

    With both flips the result is a meet homomorphism G with psi <= G <= phi
    in the original order; with no flips this is sandwich_join exactly.
    Hypothesis failures are reported in original terms.
    """
    _maps.require_same_spaces(phi, psi)
    x_lat, y_lat = phi.domain, phi.codomain
    xd = x_lat.dual() if flip_domain else x_lat
    yd = y_lat.dual() if flip_codomain else y_lat
    phi_d = LatticeMap(xd, yd, phi.values)
    psi_d = LatticeMap(xd, yd, psi.values)
    try:
        f_d = sandwich_join(phi_d, psi_d)
    except HypothesisViolated as e:
        raise HypothesisViolated(
            _variant_condition(e.which, flip_domain, flip_codomain), e.witness) from None
    return LatticeMap(x_lat, y_lat, f_d.values)


def sandwich_lattice_hom(psi2: LatticeMap, phi2: LatticeMap,
                         phi1: LatticeMap, psi1: LatticeMap,
                         budget: int = DEFAULT_SEARCH_BUDGET) -> LatticeMap | None:
    """Search for a lattice homomorphism H with psi2 <= H <= psi1.

    Requires the chain psi2 <= phi2 <= phi1 <= psi1 together with psi2
    sub-meet, phi2 super-meet, phi1 sub-join and psi1 super-join (all
    verified).  The search backtracks over elements in a fixed linear
    extension of the domain, pruning with the bounds and the homomorphism
    equations; returns the first homomorphism found in this deterministic
    order, or None when none exists.  For non-Boolean codomains existence is
    not guaranteed; findings are reported, not asserted.
    """
    _maps.require_same_spaces(psi2, phi2, phi1, psi1)
    _gate(_maps.pointwise_leq(psi2, phi2), "psi2<=phi2")
    _gate(_maps.pointwise_leq(phi2, phi1), "phi2<=phi1")
    _gate(_maps.pointwise_leq(phi1, psi1), "phi1<=psi1")
    _gate(_maps.check_sub_meet(psi2), "sub-meet(psi2)")
    _gate(_maps.check_super_meet(phi2), "super-meet(phi2)")
    _gate(_maps.check_sub_join(phi1), "sub-join(phi1)")
    _gate(_maps.check_super_join(psi1), "super-join(psi1)")

    x_lat, y_lat = psi2.domain, psi2.codomain
    n, m = x_lat.n, y_lat.n
    order = x_lat.by_downset_size
    jt_x, mt_x = x_lat.join_table, x_lat.meet_table
    jt_y, mt_y = y_lat.join_table, y_lat.meet_table
    leq_y = y_lat.leq
    lo, hi = psi2.values, psi1.values
    join_result_pairs = x_lat.pairs_with_join

    h = [-1] * n
    assigned: list[int] = []
    attempts = 0

    def consistent(x: int, v: int) -> bool:
        for a in assigned:
            ha = h[a]
            mmm = int(mt_x[a, x])
            if h[mmm] != int(mt_y[ha, v]):
                return False
            j = int(jt_x[a, x])
            hj = v if j == x else h[j]
            if hj != -1 and hj != int(jt_y[ha, v]):
                return False
        for a, b in join_result_pairs[x]:
            if a != x and b != x and h[a] != -1 and h[b] != -1 and v != int(jt_y[h[a], h[b]]):
                return False
        return True

    def backtrack(i: int) -> bool:
        nonlocal attempts
        if i == n:
            return True
        x = order[i]
        for v in range(m):
            attempts += 1
            if attempts > budget:
                raise SearchBudgetExceeded(budget)
            if not (leq_y[lo[x], v] and leq_y[v, hi[x]]):
                continue
            if not consistent(x, v):
                continue
            h[x] = v
            assigned.append(x)
            if backtrack(i + 1):
                return True
            assigned.pop()
            h[x] = -1
        return False

    if backtrack(0):
        result = LatticeMap(x_lat, y_lat, tuple(h))
        assert _maps.check_join_hom(result) and _maps.check_meet_hom(result)
        return result
    return None
