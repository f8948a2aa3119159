"""Repairing approximate join homomorphisms measured by error-function pairs.

An approximate join homomorphism f comes with two error functions phi, psi
on pairs: phi(x,y) ∧ f(x∨y) <= f(x)∨f(y) <= f(x∨y) ∨ psi(x,y).  From f we
compute a lower and an upper envelope over all join decompositions
x = x1∨...∨xn, feed them through the sandwich construction, and obtain an
exact join homomorphism F with phi(x,x) ∧ f(x) <= F(x) <= f(x) ∨ psi(x,x).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import maps as _maps
from .core import Check, Lattice
from .errors import ConditionViolated, DomainMismatch, InvalidElement, NotDistributive
from .maps import LatticeMap
from .sandwich import sandwich_join


@dataclass(frozen=True)
class ErrorPair:
    """Error functions phi, psi : X×X -> Y stored as dense id tables.

    phi must shrink and psi must grow along the order in the sense
    phi(z,z) <= phi(x,y) and psi(x,y) <= psi(z,z) whenever x,y <= z;
    use :func:`validate_error_pair` to verify.
    """

    domain: Lattice
    codomain: Lattice
    phi: tuple[tuple[int, ...], ...]
    psi: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n, m = self.domain.n, self.codomain.n
        for name in ("phi", "psi"):
            table = tuple(tuple(int(v) for v in row) for row in getattr(self, name))
            object.__setattr__(self, name, table)
            if len(table) != n or any(len(row) != n for row in table):
                raise InvalidElement(f"{name} table is not {n}x{n}", n)
            for row in table:
                for v in row:
                    if not 0 <= v < m:
                        raise InvalidElement(v, m)

    @classmethod
    def constants(cls, domain: Lattice, codomain: Lattice,
                  phi_value: int, psi_value: int) -> "ErrorPair":
        row_phi = (codomain._check(phi_value),) * domain.n
        row_psi = (codomain._check(psi_value),) * domain.n
        return cls(domain, codomain, (row_phi,) * domain.n, (row_psi,) * domain.n)


def validate_error_pair(ep: ErrorPair) -> None:
    """Exhaustively verify both monotonicity conditions; raise with a witness.

    Raises ConditionViolated with which="phi(z,z)<=phi(x,y)" or
    "psi(x,y)<=psi(z,z)" and witness (x, y, z).
    """
    leq_y = ep.codomain.leq
    phi = np.asarray(ep.phi, dtype=np.int32)
    psi = np.asarray(ep.psi, dtype=np.int32)
    for z in ep.domain.elements:
        below = list(ep.domain.down_lists[z])
        sub_phi = phi[np.ix_(below, below)]
        ok = leq_y[phi[z, z], sub_phi.ravel()].reshape(sub_phi.shape)
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            raise ConditionViolated("phi(z,z)<=phi(x,y)", (below[int(i)], below[int(j)], z))
        sub_psi = psi[np.ix_(below, below)]
        ok = leq_y[sub_psi.ravel(), psi[z, z]].reshape(sub_psi.shape)
        if not ok.all():
            i, j = np.argwhere(~ok)[0]
            raise ConditionViolated("psi(x,y)<=psi(z,z)", (below[int(i)], below[int(j)], z))


def check_approx_join(f: LatticeMap, ep: ErrorPair) -> Check:
    """Check phi(x,y) ∧ f(x∨y) <= f(x)∨f(y) <= f(x∨y) ∨ psi(x,y) for all pairs."""
    if ep.domain != f.domain or ep.codomain != f.codomain:
        raise DomainMismatch("error pair and map live on different spaces")
    y_lat = f.codomain
    jt, mt, leq = y_lat.join_table, y_lat.meet_table, y_lat.leq
    for x in f.domain.elements:
        for y in f.domain.elements:
            fj = f.values[f.domain.join(x, y)]
            mid = int(jt[f.values[x], f.values[y]])
            if not leq[int(mt[ep.phi[x][y], fj]), mid]:
                return Check(False, "approx-join-lower", (x, y))
            if not leq[mid, int(jt[fj, ep.psi[x][y]])]:
                return Check(False, "approx-join-upper", (x, y))
    return Check(True, "approx-join")


def _envelope(f: LatticeMap, upper: bool) -> LatticeMap:
    y_lat = f.codomain
    dist = y_lat.check_distributive()
    if not dist:
        raise NotDistributive("codomain", dist.witness)
    jt = y_lat.join_table
    combine = jt if upper else y_lat.meet_table
    cur = list(f.values)
    order = f.domain.by_downset_size
    pairs = f.domain.pairs_with_join
    changed = True
    while changed:
        changed = False
        for x in order:
            acc = cur[x]
            for a, b in pairs[x]:
                acc = int(combine[acc, jt[cur[a], cur[b]]])
            if acc != cur[x]:
                cur[x] = acc
                changed = True
    result = LatticeMap(f.domain, y_lat, tuple(cur))
    if upper:
        assert _maps.pointwise_leq(f, result), "upper envelope dropped below f"
        assert _maps.check_super_join(result), "upper envelope is not super-join"
    else:
        assert _maps.pointwise_leq(result, f), "lower envelope climbed above f"
        assert _maps.check_sub_join(result), "lower envelope is not sub-join"
    return result


def lower_envelope(f: LatticeMap) -> LatticeMap:
    """Pointwise infimum of f(x1)∨...∨f(xn) over all decompositions x = x1∨...∨xn.

    Computed as the limit of the decreasing iteration
    cur(x) <- cur(x) ∧ inf{cur(a) ∨ cur(b) : a∨b = x}, which agrees with the
    decomposition definition when the codomain is distributive (required).
    """
    return _envelope(f, upper=False)


def upper_envelope(f: LatticeMap) -> LatticeMap:
    """Pointwise supremum over all join decompositions; dual iteration to
    :func:`lower_envelope`."""
    return _envelope(f, upper=True)


def stabilize_join(f: LatticeMap, ep: ErrorPair) -> LatticeMap:
    """Exact join homomorphism F with phi(x,x) ∧ f(x) <= F(x) <= f(x) ∨ psi(x,x).

    All hypotheses are verified first: both lattices distributive, the error
    pair monotonicity conditions, and the two-sided approximation condition
    linking f to (phi, psi).  The conclusion is asserted before returning.
    """
    for which, lat in (("domain", f.domain), ("codomain", f.codomain)):
        chk = lat.check_distributive()
        if not chk:
            raise NotDistributive(which, chk.witness)
    validate_error_pair(ep)
    chk = check_approx_join(f, ep)
    if not chk:
        raise ConditionViolated(chk.which, chk.witness)

    phi_env = lower_envelope(f)
    psi_env = upper_envelope(f)
    result = sandwich_join(phi_env, psi_env)

    y_lat = f.codomain
    jt, mt, leq = y_lat.join_table, y_lat.meet_table, y_lat.leq
    for x in f.domain.elements:
        lo = int(mt[ep.phi[x][x], f.values[x]])
        hi = int(jt[f.values[x], ep.psi[x][x]])
        assert leq[lo, phi_env.values[x]] and leq[phi_env.values[x], f.values[x]], \
            "lower envelope escapes its error bound"
        assert leq[f.values[x], psi_env.values[x]] and leq[psi_env.values[x], hi], \
            "upper envelope escapes its error bound"
        assert leq[lo, result.values[x]] and leq[result.values[x], hi], \
            "stabilized map escapes its error bound"
    return result
