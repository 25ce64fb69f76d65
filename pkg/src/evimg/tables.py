"""Table-backed morphisms shared by finite sets, finite posets and finite
metric spaces.

A morphism is a tuple ``table`` with ``table[x]`` the image of point ``x``;
points are 0-based indices.  The three instances differ only in what an
object carries (nothing, an order, a metric) and which tables are allowed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterator

from .core.category import CategoryInstance, GuardExceeded, Quotient


@dataclass(frozen=True)
class TableMap:
    src: Any
    tgt: Any
    table: tuple

    def __call__(self, x: int) -> int:
        return self.table[x]

    def __len__(self) -> int:
        return len(self.table)


def cycles(table) -> list[tuple[int, ...]]:
    """Cycle decomposition of a permutation, each cycle starting at its least point."""
    seen = [False] * len(table)
    out = []
    for start in range(len(table)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = table[x]
        if x != start:
            raise ValueError("not a permutation")
        out.append(tuple(cyc))
    return out


def is_permutation(table, n: int | None = None) -> bool:
    n = len(table) if n is None else n
    return len(table) == n and sorted(table) == list(range(n))


def invert_by_cycles(table) -> tuple[int, ...]:
    inv = [0] * len(table)
    for cyc in cycles(table):
        for i, x in enumerate(cyc):
            inv[x] = cyc[i - 1]
    return tuple(inv)


def iterate(table, x: int, n: int) -> int:
    for _ in range(n):
        x = table[x]
    return x


def power_table(table, n: int) -> tuple[int, ...]:
    return tuple(iterate(table, x, n) for x in range(len(table)))


def conjugating_tables(a, b, pair_ok=None) -> tuple[int, ...] | None:
    """A bijection k with k[a[x]] == b[k[x]], or None.

    ``pair_ok(x, x2, y, y2)`` may veto sending x to y and x2 to y2 together;
    it lets the poset and metric instances demand an order isomorphism or an
    isometry.  Cycles of ``a`` are matched to cycles of ``b`` of the same
    length; choosing where one point of a cycle goes fixes the whole cycle.
    """
    if len(a) != len(b):
        return None
    ca, cb = cycles(a), cycles(b)
    if sorted(map(len, ca)) != sorted(map(len, cb)):
        return None
    ca.sort(key=len, reverse=True)
    k: dict[int, int] = {}
    used = [False] * len(cb)

    def consistent(pairs) -> bool:
        if pair_ok is None:
            return True
        for i, (x, y) in enumerate(pairs):
            for x2, y2 in itertools.chain(k.items(), pairs[: i + 1]):
                if not pair_ok(x, x2, y, y2):
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(ca):
            return True
        cyc = ca[i]
        length = len(cyc)
        for j, other in enumerate(cb):
            if used[j] or len(other) != length:
                continue
            for off in range(length):
                pairs = [(cyc[t], other[(t + off) % length]) for t in range(length)]
                if not consistent(pairs):
                    continue
                used[j] = True
                k.update(pairs)
                if search(i + 1):
                    return True
                for x, _ in pairs:
                    del k[x]
                used[j] = False
        return False

    if not search(0):
        return None
    return tuple(k[x] for x in range(len(a)))


class TableCategory(CategoryInstance):
    """Common structure of the set-based instances."""

    map_type = TableMap
    element_oracles = False

    # -- per-instance object structure ---------------------------------------

    def points(self, obj) -> int:
        raise NotImplementedError

    def induced(self, obj, pts):
        """The subobject structure on the sorted point list ``pts``."""
        raise NotImplementedError

    def map_error(self, src, tgt, table) -> str | None:
        """Why ``table`` is not a morphism src -> tgt, or None if it is."""
        raise NotImplementedError

    def iso_pair_ok(self, src, tgt, x, x2, y, y2) -> bool:
        """Whether a bijection may send x to y and x2 to y2 simultaneously."""
        return True

    def quotient_object(self, f: TableMap, reps: list[int]):
        """Structure on the classes of the eventual quotient, given by their
        least representatives."""
        raise NotImplementedError

    # -- construction --------------------------------------------------------

    def make(self, src, tgt, table) -> TableMap:
        table = tuple(table)
        err = self.map_error(src, tgt, table)
        if err:
            raise ValueError(err)
        return self.map_type(src, tgt, table)

    def _mk(self, src, tgt, table) -> TableMap:
        return self.map_type(src, tgt, tuple(table))

    def _range_error(self, src, tgt, table) -> str | None:
        n, m = self.points(src), self.points(tgt)
        if len(table) != n:
            return f"table has length {len(table)}, expected {n}"
        for x, y in enumerate(table):
            if isinstance(y, bool) or not isinstance(y, int) or not 0 <= y < m:
                return f"table[{x}] = {y!r} is out of range [0, {m})"
        return None

    # -- category structure --------------------------------------------------

    def dom(self, m):
        return m.src

    def cod(self, m):
        return m.tgt

    def compose(self, g, f):
        if f.tgt != g.src:
            raise ValueError("maps are not composable")
        gt = g.table
        return self.map_type(f.src, g.tgt, tuple(gt[y] for y in f.table))

    def identity(self, obj):
        return self.map_type(obj, obj, tuple(range(self.points(obj))))

    def size(self, obj) -> int:
        return self.points(obj)

    def validate(self, m) -> None:
        if not isinstance(m, self.map_type):
            raise ValueError(f"expected a {self.map_type.__name__}")
        err = self.map_error(m.src, m.tgt, m.table)
        if err:
            raise ValueError(err)

    def factorize(self, m):
        pts = sorted(set(m.table))
        carrier = self.induced(m.tgt, pts)
        index = {p: i for i, p in enumerate(pts)}
        cover = self._mk(m.src, carrier, (index[y] for y in m.table))
        emb = self._mk(carrier, m.tgt, pts)
        return cover, emb

    def is_injective(self, m) -> bool:
        return len(set(m.table)) == len(m.table)

    def is_surjective(self, m) -> bool:
        return len(set(m.table)) == self.points(m.tgt)

    def is_embedding(self, m) -> bool:
        return self.is_injective(m)

    def is_covering(self, m) -> bool:
        return self.is_surjective(m)

    def image_key(self, m):
        return tuple(sorted(set(m.table)))

    def image_leq(self, m1, m2) -> bool:
        return set(m1.table) <= set(m2.table)

    # -- automorphisms -------------------------------------------------------

    def invert_automorphism(self, a):
        if a.src != a.tgt or not is_permutation(a.table, self.points(a.src)):
            raise ValueError("not an automorphism")
        return self._mk(a.src, a.src, invert_by_cycles(a.table))

    def inverse(self, iso):
        if not (self.is_injective(iso) and self.is_surjective(iso)):
            raise ValueError("not a bijection")
        inv = [0] * len(iso.table)
        for x, y in enumerate(iso.table):
            inv[y] = x
        return self.make(iso.tgt, iso.src, inv)

    def find_conjugator(self, a, b):
        src, tgt = a.src, b.src

        def pair_ok(x, x2, y, y2):
            return self.iso_pair_ok(src, tgt, x, x2, y, y2)

        k = conjugating_tables(a.table, b.table, pair_ok)
        return None if k is None else self._mk(src, tgt, k)

    # -- quotient and enumeration --------------------------------------------

    def eventual_classes(self, f: TableMap) -> tuple[list[int], tuple[int, ...]]:
        """Classes of x ~ y iff f^n(x) == f^n(y) for n = |X|, as least
        representatives and the class index of each point."""
        n = self.points(f.src)
        fn = power_table(f.table, n)
        reps: list[int] = []
        first: dict[int, int] = {}
        labels = []
        for x in range(n):
            v = fn[x]
            if v not in first:
                first[v] = len(reps)
                reps.append(x)
            labels.append(first[v])
        return reps, tuple(labels)

    def eventual_quotient(self, f) -> Quotient:
        reps, labels = self.eventual_classes(f)
        carrier = self.quotient_object(f, reps)
        return Quotient(carrier, self._mk(f.src, carrier, labels))

    def subobject_candidates(self, f, carrier_emb, guard: int):
        n = self.points(f.src)
        if 2 ** n > guard:
            raise GuardExceeded(f"2^{n} subsets exceed the oracle guard {guard}")
        out = []
        for mask in range(2 ** n):
            pts = [x for x in range(n) if mask >> x & 1]
            out.append(self._mk(self.induced(f.src, pts), f.src, pts))
        return out, True

    def all_maps(self, src, tgt) -> Iterator[TableMap]:
        n, m = self.points(src), self.points(tgt)
        for table in itertools.product(range(m), repeat=n):
            if self.map_error(src, tgt, table) is None:
                yield self.map_type(src, tgt, table)

    def objects_up_to(self, k: int) -> Iterator[Any]:
        raise NotImplementedError

    def automorphism_objects(self, k: int) -> Iterator[tuple[Any, TableMap]]:
        """Every (A, a) with a an automorphism of an object A of size <= k."""
        for obj in self.objects_up_to(k):
            n = self.points(obj)
            for perm in itertools.permutations(range(n)):
                a = self.map_type(obj, obj, perm)
                if self.map_error(obj, obj, perm) is None and self.map_error(
                    obj, obj, invert_by_cycles(perm)
                ) is None:
                    yield obj, a

    # -- serialization -------------------------------------------------------

    def describe(self, m):
        return list(m.table)
