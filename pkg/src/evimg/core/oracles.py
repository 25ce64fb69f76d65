"""Brute-force oracles.

Each oracle rebuilds some part of the eventual-image structure from its
defining universal property by enumeration, independently of the two
algorithms, and then compares.  They are only feasible for small inputs and
say so (``skipped``) rather than passing silently when a guard is hit.
"""

from __future__ import annotations

import functools

from .algorithms import (
    eventual_image_chain,
    eventual_image_idempotent_power,
    power,
    terminal_coalgebra,
)
from .category import (
    NOT_APPLICABLE,
    SKIPPED,
    Endo,
    GuardExceeded,
    Verdict,
)


def subobject_oracle(e: Endo, guard: int = 1 << 12) -> Verdict:
    """The terminal coalgebra is the greatest subobject A with A <= f(A).

    For the table instances every subset is enumerated.  For vector spaces
    the candidates are E itself and the f-stable spans E + <x, fx, ...>, each
    of which must fail to be a post-fixpoint.
    """
    cat, f = e.cat, e.f
    tc = terminal_coalgebra(e)
    cover, emb = cat.factorize(cat.compose(f, tc.j))
    if cat.image_key(emb) != cat.image_key(tc.j):
        return Verdict.fail(f"f(E) != E for E = {cat.describe(tc.j)}")
    if not cat.is_invertible(cover):
        return Verdict.fail(f"f is not invertible on E: {cat.describe(cover)}")
    try:
        candidates, exhaustive = cat.subobject_candidates(f, tc.j, guard)
    except GuardExceeded as exc:
        return Verdict(SKIPPED, str(exc))
    except NotImplementedError:
        return Verdict(NOT_APPLICABLE, f"no subobject enumeration for {cat.name}")
    key = cat.image_key(tc.j)
    post_fixpoints = 0
    for j in candidates:
        is_post = cat.image_leq(j, cat.compose(f, j))
        if not is_post:
            continue
        post_fixpoints += 1
        if not cat.image_leq(j, tc.j):
            return Verdict.fail(
                f"post-fixpoint {cat.describe(j)} is not contained in E = {cat.describe(tc.j)}"
            )
        if not exhaustive and cat.image_key(j) != key:
            return Verdict.fail(f"strictly larger post-fixpoint {cat.describe(j)}")
    how = "all" if exhaustive else "candidate"
    return Verdict.ok(f"E is the greatest of {post_fixpoints} post-fixpoints among {len(candidates)} {how} subobjects")


def _union_find(n: int):
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    return find, union


def limit_colimit_oracle(e: Endo) -> Verdict:
    """Element-level limit L and colimit M of ... -> X -> X -> ..., and the
    canonical map L -> M.

    L is represented by windows (x_-n, ..., x_0) of bi-infinite orbits, where
    n = |X|: x_-n must have n predecessors, so it is f^n(y) for some y.  M is
    built from the pairs (k, x), 0 <= k <= n, glued by (k, x) ~ (k+1, f x);
    the gluing runs through stage 3n, far enough for any two such pairs that
    meet at all to have met.
    """
    cat = e.cat
    if not getattr(cat, "element_oracles", False):
        return Verdict(NOT_APPLICABLE, f"no element-level construction for {cat.name}")
    t = e.f.table
    n = len(t)

    def orbit(x: int, steps: int) -> tuple[int, ...]:
        out = [x]
        for _ in range(steps):
            out.append(t[out[-1]])
        return tuple(out)

    windows = sorted({orbit(power(cat, e.f, n).table[y], n) for y in range(n)})

    stages = 3 * n + 1
    find, union = _union_find(stages * n)
    for k in range(stages - 1):
        for x in range(n):
            union(k * n + x, (k + 1) * n + t[x])
    classes = sorted({find(i) for i in range((n + 1) * n)})

    canonical = [find(w[-1]) for w in windows]  # (x_k) -> [(0, x_0)]
    if len(set(canonical)) != len(windows):
        return Verdict.fail(f"canonical map L -> M is not injective on windows {windows}")
    if sorted(canonical) != classes:
        missing = sorted(set(classes) - set(canonical))
        return Verdict.fail(f"canonical map L -> M misses classes with representatives {missing}")

    x0s = sorted(w[-1] for w in windows)
    for name, data in (
        ("chain", eventual_image_chain(e)),
        ("idempotent power", eventual_image_idempotent_power(e)),
    ):
        if sorted(data.iota.table) != x0s:
            return Verdict.fail(
                f"{name}: iota image {sorted(data.iota.table)} != orbit points {x0s}"
            )
        for x in range(n):
            for y in range(x + 1, n):
                same_m = find(x) == find(y)
                same_pi = data.pi.table[x] == data.pi.table[y]
                if same_m != same_pi:
                    return Verdict.fail(
                        f"{name}: points {x}, {y} are {'identified' if same_m else 'separated'} "
                        f"in M but pi = {list(data.pi.table)}"
                    )
    return Verdict.ok(f"|L| = |M| = {len(windows)}, canonical map bijective")


@functools.lru_cache(maxsize=4096)
def _tables(cat, src, tgt) -> tuple[tuple[int, ...], ...]:
    return tuple(m.table for m in cat.all_maps(src, tgt))


@functools.lru_cache(maxsize=64)
def _automorphisms(cat, k: int) -> tuple:
    return tuple(cat.automorphism_objects(k))


def universal_property_oracle(e: Endo, k: int) -> Verdict:
    """iota is terminal and pi initial among equivariant maps from and to
    automorphisms (A, a) with |A| <= k, checked by enumerating every map.

    Works on raw tables: (g o h)[x] = g[h[x]].
    """
    cat, f = e.cat, e.f
    if not getattr(cat, "element_oracles", False):
        return Verdict(NOT_APPLICABLE, f"no map enumeration for {cat.name}")
    if k <= 0:
        return Verdict(SKIPPED, "bound k = 0: no automorphism sources enumerated")
    data = eventual_image_chain(e)
    if not cat.is_invertible(data.auto):
        return Verdict.fail(f"(E, auto) is not an automorphism: auto = {cat.describe(data.auto)}")
    x, carrier = e.obj, data.carrier
    ft = f.table
    iota, pi, auto = data.iota.table, data.pi.table, data.auto.table
    sources = 0
    maps_in = maps_out = 0
    for a_obj, a in _automorphisms(cat, k):
        sources += 1
        at = a.table
        into_e = _tables(cat, a_obj, carrier)
        for h in _tables(cat, a_obj, x):
            if any(h[at[p]] != ft[h[p]] for p in range(len(h))):
                continue
            maps_in += 1
            lifts = [g for g in into_e if all(iota[g[p]] == h[p] for p in range(len(h)))]
            if len(lifts) != 1:
                return Verdict.fail(
                    f"h = {list(h)} from a = {list(at)} has {len(lifts)} factorizations through iota"
                )
            g = lifts[0]
            if any(g[at[p]] != auto[g[p]] for p in range(len(g))):
                return Verdict.fail(f"lift {list(g)} of h = {list(h)} is not equivariant")
        out_of_e = _tables(cat, carrier, a_obj)
        for h in _tables(cat, x, a_obj):
            if any(h[ft[p]] != at[h[p]] for p in range(len(h))):
                continue
            maps_out += 1
            ext = [g for g in out_of_e if all(g[pi[p]] == h[p] for p in range(len(h)))]
            if len(ext) != 1:
                return Verdict.fail(
                    f"h = {list(h)} to a = {list(at)} has {len(ext)} factorizations through pi"
                )
            g = ext[0]
            if any(at[g[p]] != g[auto[p]] for p in range(len(g))):
                return Verdict.fail(f"extension {list(g)} of h = {list(h)} is not equivariant")
    return Verdict.ok(
        f"{sources} automorphism sources, {maps_in} maps in and {maps_out} maps out factor uniquely"
    )
