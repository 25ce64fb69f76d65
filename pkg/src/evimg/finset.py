"""Finite sets with injections as embeddings and surjections as coverings."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core.algorithms import idempotent_power_search
from .core.category import ContractViolation, GuardExceeded, Verdict
from .tables import (
    TableCategory,
    TableMap,
    conjugating_tables,
    cycles,
    is_permutation,
    iterate,
    power_table,
)


class FinFunction(TableMap):
    """A function {0..n-1} -> {0..m-1}; ``src`` and ``tgt`` are the sizes."""

    @property
    def n(self) -> int:
        return self.src

    @property
    def m(self) -> int:
        return self.tgt


class FinSet(TableCategory):
    name = "finset"
    map_type = FinFunction
    element_oracles = True

    def points(self, obj) -> int:
        return obj

    def induced(self, obj, pts):
        return len(pts)

    def map_error(self, src, tgt, table):
        return self._range_error(src, tgt, table)

    def quotient_object(self, f, reps):
        return len(reps)

    def objects_up_to(self, k: int):
        return iter(range(k + 1))

    def describe_object(self, obj):
        return {"size": obj}


FINSET = FinSet()


def fin(table, m: int | None = None) -> FinFunction:
    """A finite function from its table; by default an endomorphism."""
    table = tuple(table)
    return FINSET.make(len(table), len(table) if m is None else m, table)


@dataclass(frozen=True)
class CycleType:
    lengths: tuple[int, ...]

    @property
    def size(self) -> int:
        return sum(self.lengths)


def factorize_finset(f: FinFunction) -> tuple[FinFunction, FinFunction]:
    return FINSET.factorize(f)


def periodic_points(f: FinFunction) -> list[int]:
    """Points x with f^k(x) == x for some k >= 1."""
    n = len(f.table)
    out = []
    for x in range(n):
        y = f.table[x]
        for _ in range(n):
            if y == x:
                out.append(x)
                break
            y = f.table[y]
    return out


def back_and_forth(f: FinFunction, x: int) -> int:
    """f^inf(x): push x forward |X| times, then pull it back |X| times along
    the inverse of f restricted to f^|X|(X)."""
    n = f.n
    stable = set(power_table(f.table, n))
    pull = {f.table[z]: z for z in stable}
    if len(pull) != len(stable) or set(pull) != stable:
        raise ContractViolation("f does not permute f^|X|(X)")
    y = iterate(f.table, x, n)
    for _ in range(n):
        y = pull[y]
    return y


def factorial_power(f: FinFunction, guard: int = 12) -> FinFunction:
    """f^(|X|!) by repeated squaring."""
    if f.n > guard:
        raise GuardExceeded(f"|X| = {f.n} exceeds the factorial-power guard {guard}")
    return FinFunction(f.n, f.n, power_table_fast(f.table, math.factorial(f.n)))


def power_table_fast(table, e: int) -> tuple[int, ...]:
    result = tuple(range(len(table)))
    base = tuple(table)
    while e:
        if e & 1:
            result = tuple(base[y] for y in result)
        e >>= 1
        if e:
            base = tuple(base[y] for y in base)
    return result


def unique_idempotent_in_powers(f: FinFunction) -> FinFunction:
    """The single idempotent among f, f^2, ...; checks no other power up to
    preperiod + period is a different idempotent."""
    n, idem = idempotent_power_search(FINSET, f)
    p = f
    for k in range(1, 2 * n + 1):
        if FINSET.compose(p, p) == p and p != idem:
            raise ContractViolation(f"f^{k} is a second idempotent power")
        p = FINSET.compose(f, p)
    return idem


def idempotent_exponent(f: FinFunction) -> int:
    return idempotent_power_search(FINSET, f)[0]


def cycle_type(p: FinFunction) -> CycleType:
    if not is_permutation(p.table, p.tgt):
        raise ValueError("not a bijection")
    return CycleType(tuple(sorted((len(c) for c in cycles(p.table)), reverse=True)))


def conjugate(p: FinFunction, q: FinFunction) -> Verdict:
    """Conjugacy of two permutations, with an explicit k such that k p = q k."""
    tp, tq = cycle_type(p), cycle_type(q)
    if tp != tq:
        return Verdict.fail(f"cycle types differ: {list(tp.lengths)} vs {list(tq.lengths)}")
    k = conjugating_tables(p.table, q.table)
    if k is None:
        raise ContractViolation("equal cycle types but no conjugating bijection found")
    return Verdict.ok(f"conjugate via k = {list(k)}")
