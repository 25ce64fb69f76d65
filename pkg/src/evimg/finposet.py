"""Finite posets with monotone maps.

A monotone map factors as a surjection onto its image, ordered as a subposet
of the target, followed by the inclusion.  The embeddings are therefore the
order-embeddings; on an endomorphism every injection is one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core.algorithms import eventual_image_chain, power
from .core.category import ContractViolation, Endo, EventualImageData
from .tables import TableCategory, TableMap, power_table


@dataclass(frozen=True)
class FinPoset:
    """``leq[i][j]`` is True when i <= j."""

    leq: tuple

    def __post_init__(self):
        leq = tuple(tuple(bool(x) for x in row) for row in self.leq)
        object.__setattr__(self, "leq", leq)
        err = order_error(leq)
        if err:
            raise ValueError(err)

    @property
    def n(self) -> int:
        return len(self.leq)

    @classmethod
    def discrete(cls, n: int) -> "FinPoset":
        return cls(tuple(tuple(i == j for j in range(n)) for i in range(n)))

    @classmethod
    def chain(cls, n: int) -> "FinPoset":
        return cls(tuple(tuple(i <= j for j in range(n)) for i in range(n)))


def order_error(leq) -> str | None:
    """First violated partial-order axiom, or None.  No closure is taken."""
    n = len(leq)
    for i, row in enumerate(leq):
        if len(row) != n:
            return f"order row {i} has length {len(row)}, expected {n}"
    for i in range(n):
        if not leq[i][i]:
            return f"not reflexive at {i}"
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                return f"not antisymmetric: {i} <= {j} and {j} <= {i}"
    for i in range(n):
        for j in range(n):
            if not leq[i][j]:
                continue
            for k in range(n):
                if leq[j][k] and not leq[i][k]:
                    return f"not transitive: {i} <= {j} <= {k} but not {i} <= {k}"
    return None


class MonotoneMap(TableMap):
    pass


class FinPosetCategory(TableCategory):
    name = "finposet"
    map_type = MonotoneMap
    element_oracles = True

    def points(self, obj) -> int:
        return obj.n

    def induced(self, obj, pts):
        return FinPoset(tuple(tuple(obj.leq[i][j] for j in pts) for i in pts))

    def map_error(self, src, tgt, table):
        err = self._range_error(src, tgt, table)
        if err:
            return err
        for x in range(src.n):
            for y in range(src.n):
                if src.leq[x][y] and not tgt.leq[table[x]][table[y]]:
                    return f"not monotone: {x} <= {y} but f({x}) = {table[x]} !<= f({y}) = {table[y]}"
        return None

    def iso_pair_ok(self, src, tgt, x, x2, y, y2) -> bool:
        return src.leq[x][x2] == tgt.leq[y][y2] and src.leq[x2][x] == tgt.leq[y2][y]

    def is_embedding(self, m) -> bool:
        """Injective and order-reflecting: x <= y iff f(x) <= f(y)."""
        if not self.is_injective(m):
            return False
        s, t, tab = m.src.leq, m.tgt.leq, m.table
        return all(s[x][y] == t[tab[x]][tab[y]] for x in range(len(tab)) for y in range(len(tab)))

    def quotient_object(self, f, reps):
        # [x] <= [y] iff f^n(x) <= f^n(y) for large n; n = |X| suffices
        fn = power_table(f.table, f.src.n)
        leq = f.src.leq
        return FinPoset(tuple(tuple(leq[fn[a]][fn[b]] for b in reps) for a in reps))

    def objects_up_to(self, k: int):
        for n in range(k + 1):
            pairs = list(itertools.combinations(range(n), 2))
            for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
                leq = [[i == j for j in range(n)] for i in range(n)]
                for (i, j), c in zip(pairs, choice):
                    if c == 1:
                        leq[i][j] = True
                    elif c == 2:
                        leq[j][i] = True
                if order_error(leq) is None:
                    yield FinPoset(tuple(map(tuple, leq)))

    def describe_object(self, obj):
        return {"size": obj.n, "order": [[int(x) for x in row] for row in obj.leq]}


FINPOSET = FinPosetCategory()


def monotone(poset: FinPoset, table, target: FinPoset | None = None) -> MonotoneMap:
    return FINPOSET.make(poset, poset if target is None else target, table)


def factorize_monotone(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Corestriction onto the image, whose order is induced from the target,
    followed by the inclusion."""
    return FINPOSET.factorize(f)


def eventual_image_poset(f: MonotoneMap) -> EventualImageData:
    data = eventual_image_chain(Endo.of(FINPOSET, f))
    auto, auto_inv = data.auto, data.auto_inv
    if not FINPOSET.is_invertible(auto):
        raise ContractViolation("induced automorphism is not an order isomorphism")
    order = 1
    p = auto
    while p != FINPOSET.identity(data.carrier):
        p = FINPOSET.compose(auto, p)
        order += 1
    if power(FINPOSET, auto, order - 1) != auto_inv:
        raise ContractViolation("inverse automorphism is not auto^(order-1)")
    FINPOSET.validate(auto_inv)
    return data
