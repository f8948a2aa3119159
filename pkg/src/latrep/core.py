"""Finite lattices: validated order matrices, join/meet tables, duality.

Elements of a lattice are dense integer ids; labels are kept for I/O only.
All order data is precomputed so that every lattice operation is a table
lookup.  Instances are immutable after construction and safe to share
between threads.
"""
from __future__ import annotations

import random
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    CycleDetected,
    DuplicateLabel,
    EmptySet,
    InvalidElement,
    NotALattice,
)


class Check(NamedTuple):
    """Outcome of a property check; truthy iff the property holds.

    ``which`` names the checked condition, ``witness`` is a tuple of element
    ids demonstrating the failure (None when the check passed).
    """

    ok: bool
    which: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class Lattice:
    """A finite lattice given by its full order matrix and operation tables.

    ``leq[a, b]`` holds iff a <= b.  ``join_table`` and ``meet_table`` store
    least upper bounds and greatest lower bounds of pairs.  Use
    :func:`validate_lattice` to build one from labels and cover pairs; the
    direct constructor trusts its inputs (builders use it with tables that
    are correct by construction).
    """

    def __init__(self, labels: Sequence[str], leq, join_table, meet_table):
        self.labels = tuple(str(x) for x in labels)
        n = len(self.labels)
        self.n = n
        self.leq = _frozen(np.asarray(leq, dtype=bool).reshape(n, n))
        self.join_table = _frozen(np.asarray(join_table, dtype=np.int32).reshape(n, n))
        self.meet_table = _frozen(np.asarray(meet_table, dtype=np.int32).reshape(n, n))
        self._id_of = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._id_of) != n:
            raise DuplicateLabel(next(l for i, l in enumerate(self.labels) if l in self.labels[:i]))
        nleq = self.leq.sum(axis=1)
        bottoms = np.nonzero(nleq == n)[0]
        tops = np.nonzero(self.leq.sum(axis=0) == n)[0]
        self.bottom = int(bottoms[0]) if len(bottoms) else None
        self.top = int(tops[0]) if len(tops) else None
        self.has_bottom = self.bottom is not None
        self.has_top = self.top is not None
        self._hash = hash((self.labels, self.leq.tobytes()))

    # -- identity ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"Lattice(n={self.n}, labels={list(self.labels[:6])}{'...' if self.n > 6 else ''})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return self._hash

    # -- element access ----------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.n)

    def id_of(self, label: str) -> int:
        try:
            return self._id_of[label]
        except KeyError:
            raise InvalidElement(label, self.n) from None

    def label_of(self, x: int) -> str:
        self._check(x)
        return self.labels[x]

    def _check(self, x) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.n:
            raise InvalidElement(x, self.n)
        return int(x)

    # -- order and operations ----------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[self._check(a), self._check(b)])

    def join(self, a: int, b: int) -> int:
        return int(self.join_table[self._check(a), self._check(b)])

    def meet(self, a: int, b: int) -> int:
        return int(self.meet_table[self._check(a), self._check(b)])

    def sup_set(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        if not xs:
            if self.bottom is None:
                raise EmptySet("sup")
            return self.bottom
        acc = self._check(xs[0])
        for x in xs[1:]:
            acc = int(self.join_table[acc, self._check(x)])
        return acc

    def inf_set(self, xs: Iterable[int]) -> int:
        xs = list(xs)
        if not xs:
            if self.top is None:
                raise EmptySet("inf")
            return self.top
        acc = self._check(xs[0])
        for x in xs[1:]:
            acc = int(self.meet_table[acc, self._check(x)])
        return acc

    # -- derived structure (cached) -----------------------------------------

    @cached_property
    def down_lists(self) -> tuple[tuple[int, ...], ...]:
        """For each x, the ids of elements <= x, ascending."""
        return tuple(tuple(int(z) for z in np.nonzero(self.leq[:, x])[0]) for x in self.elements)

    @cached_property
    def up_lists(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(z) for z in np.nonzero(self.leq[x, :])[0]) for x in self.elements)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """Down-sets as bitmasks (bit z set iff z <= x)."""
        out = []
        for x in self.elements:
            m = 0
            for z in self.down_lists[x]:
                m |= 1 << z
            out.append(m)
        return tuple(out)

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        out = []
        for x in self.elements:
            m = 0
            for z in self.up_lists[x]:
                m |= 1 << z
            out.append(m)
        return tuple(out)

    @cached_property
    def by_downset_size(self) -> tuple[int, ...]:
        """Element ids in increasing down-set size (a linear extension)."""
        return tuple(sorted(self.elements, key=lambda x: (len(self.down_lists[x]), x)))

    @cached_property
    def pairs_with_join(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each x, all pairs (a, b) with a <= b (as ids) and a∨b = x."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.elements]
        jt = self.join_table
        for a in self.elements:
            for b in range(a, self.n):
                out[int(jt[a, b])].append((a, b))
        return tuple(tuple(p) for p in out)

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs (child, parent): child < parent with nothing strictly between."""
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        strict = lt.astype(np.int64)  # wide enough that path counts cannot overflow
        between = (strict @ strict) > 0
        child = lt & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(child))]

    # -- lattice laws --------------------------------------------------------

    @cached_property
    def _distributive_witness(self) -> tuple[int, int, int] | None:
        jt, mt = self.join_table, self.meet_table
        for a in self.elements:
            lhs = mt[a, jt]                        # a ∧ (b ∨ c)
            rhs = jt[np.ix_(mt[a], mt[a])]         # (a ∧ b) ∨ (a ∧ c)
            diff = lhs != rhs
            if diff.any():
                b, c = np.argwhere(diff)[0]
                return (a, int(b), int(c))
        return None

    @property
    def is_distributive(self) -> bool:
        return self._distributive_witness is None

    def check_distributive(self) -> Check:
        w = self._distributive_witness
        return Check(w is None, "distributive", w)

    def check_dual_infinite_distributive(self, max_exhaustive: int = 16,
                                         samples: int = 2000, seed: int = 0) -> Check:
        """Check y ∨ inf S == inf{y ∨ s : s in S} over subsets S.

        Exhaustive over all nonempty subsets when n <= max_exhaustive;
        otherwise all pairs plus seeded random subsets.  Automatic for finite
        distributive lattices; exists to expose misuse on non-distributive
        inputs.
        """
        n = self.n
        jt, mt = self.join_table, self.meet_table
        if n <= max_exhaustive:
            size = 1 << n
            inf_all = [0] * size
            for m in range(1, size):
                low = (m & -m).bit_length() - 1
                rest = m ^ (1 << low)
                inf_all[m] = low if rest == 0 else int(mt[inf_all[rest], low])
            for y in self.elements:
                jy = jt[y]
                g = [0] * size
                for m in range(1, size):
                    low = (m & -m).bit_length() - 1
                    rest = m ^ (1 << low)
                    v = int(jy[low])
                    g[m] = v if rest == 0 else int(mt[g[rest], v])
                    if int(jy[inf_all[m]]) != g[m]:
                        s = tuple(i for i in range(n) if m >> i & 1)
                        return Check(False, "dual-infinite-distributive", (y, s))
            return Check(True, "dual-infinite-distributive")
        rng = random.Random(seed)
        subsets: list[tuple[int, ...]] = [(a, b) for a in range(n) for b in range(a + 1, n)]
        for _ in range(samples):
            k = rng.randint(2, n)
            subsets.append(tuple(sorted(rng.sample(range(n), k))))
        for y in self.elements:
            for s in subsets:
                inf_s = self.inf_set(s)
                rhs = self.inf_set([int(jt[y, z]) for z in s])
                if int(jt[y, inf_s]) != rhs:
                    return Check(False, "dual-infinite-distributive", (y, s))
        return Check(True, "dual-infinite-distributive")

    def dual(self) -> "Lattice":
        """Same elements with the order reversed; join and meet swap roles."""
        return Lattice(self.labels, self.leq.T.copy(), self.meet_table.copy(),
                       self.join_table.copy())


def validate_lattice(labels: Sequence[str], cover_pairs: Iterable[tuple[str, str]]) -> Lattice:
    """Build and fully validate a lattice from labels and (child, parent) covers.

    The order is the reflexive-transitive closure of the covers.  Raises
    DuplicateLabel, CycleDetected, or NotALattice (with a witness pair) if
    the input does not describe a lattice.
    """
    labels = [str(x) for x in labels]
    seen: set[str] = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(lab)
        seen.add(lab)
    n = len(labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    leq = np.eye(n, dtype=bool)
    for k, (c, p) in enumerate(cover_pairs):
        c, p = str(c), str(p)
        if c not in idx or p not in idx:
            missing = c if c not in idx else p
            raise InvalidElement(f"covers[{k}]: unknown label {missing!r}", n)
        if c == p:
            raise CycleDetected((c, p))
        leq[idx[c], idx[p]] = True
    for k in range(n):  # Warshall closure
        leq |= np.outer(leq[:, k], leq[k, :])
    sym = leq & leq.T & ~np.eye(n, dtype=bool)
    if sym.any():
        a, b = np.argwhere(sym)[0]
        raise CycleDetected((labels[int(a)], labels[int(b)]))

    join_table = np.zeros((n, n), dtype=np.int32)
    meet_table = np.zeros((n, n), dtype=np.int32)
    up_key = {leq[i].tobytes(): i for i in range(n)}
    down_key = {leq[:, i].tobytes(): i for i in range(n)}
    for i in range(n):
        for j in range(i, n):
            common_up = leq[i] & leq[j]
            u = up_key.get(common_up.tobytes())
            if u is None:
                reason = "no upper bound" if not common_up.any() else "no least upper bound"
                raise NotALattice((labels[i], labels[j]), "join", reason)
            join_table[i, j] = join_table[j, i] = u
            common_down = leq[:, i] & leq[:, j]
            d = down_key.get(common_down.tobytes())
            if d is None:
                reason = "no lower bound" if not common_down.any() else "no greatest lower bound"
                raise NotALattice((labels[i], labels[j]), "meet", reason)
            meet_table[i, j] = meet_table[j, i] = d
    return Lattice(labels, leq, join_table, meet_table)
