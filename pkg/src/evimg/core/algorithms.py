"""The two generic eventual-image algorithms and the coalgebra iteration.

``eventual_image_chain`` descends the chain of images X >= im f >= im f^2 >= ...
until it repeats and reads the idempotent off the stable stage by the
back-and-forth formula.  ``eventual_image_idempotent_power`` instead looks
for an idempotent among the powers of f and splits it.  Both only use the
hooks of :class:`CategoryInstance`.
"""

from __future__ import annotations

import math

from .category import (
    CategoryInstance,
    ContractViolation,
    Endo,
    EventualImageData,
    GuardExceeded,
    Quotient,
    Subobject,
)


def power(cat: CategoryInstance, f, n: int):
    """f^n by repeated squaring (f^0 is the identity)."""
    if n < 0:
        raise ValueError("negative exponent")
    result = cat.identity(cat.dom(f))
    base = f
    while n:
        if n & 1:
            result = cat.compose(base, result)
        n >>= 1
        if n:
            base = cat.compose(base, base)
    return result


def _chain(e: Endo):
    cat, f = e.cat, e.f
    ident = cat.identity(e.obj)
    stages = [Subobject(e.obj, ident)]
    covers = [ident]  # covers[k]: X ->> im f^k, with stages[k].j o covers[k] == f^k
    bound = cat.size(e.obj)
    while True:
        top = stages[-1]
        cover, emb = cat.factorize(cat.compose(f, top.j))
        if cat.image_key(emb) == cat.image_key(top.j):
            return stages, covers, len(stages) - 1
        if len(stages) > bound:
            raise ContractViolation(
                f"image chain did not stabilize within size(X) = {bound} steps"
            )
        stages.append(Subobject(cat.dom(emb), emb))
        covers.append(cat.compose(cover, covers[-1]))


def image_chain(e: Endo) -> tuple[list[Subobject], int]:
    """The images X, im f, im f^2, ... up to the first repeat, and the least
    n with im f^(n+1) == im f^n."""
    stages, _, n = _chain(e)
    return stages, n


def eventual_image_chain(e: Endo) -> EventualImageData:
    cat, f = e.cat, e.f
    stages, covers, n = _chain(e)
    iota = stages[-1].j
    carrier = stages[-1].carrier
    auto, emb = cat.factorize(cat.compose(f, iota))
    if not cat.equal(emb, iota):
        raise ContractViolation("factorization is not canonical: f(E) and E got different embeddings")
    auto_inv = cat.invert_automorphism(auto)
    # back and forth: x -> f^n(x) in E, then n steps of the inverse automorphism
    pi = cat.compose(power(cat, auto_inv, n), covers[-1])
    return EventualImageData(
        carrier=carrier,
        iota=iota,
        pi=pi,
        idempotent=cat.compose(iota, pi),
        auto=auto,
        auto_inv=auto_inv,
        stabilization_index=n,
    )


def idempotent_power_search(cat: CategoryInstance, f, cap: int | None = None):
    """Least N >= 1 with f^(2N) == f^N, and f^N.

    Walks f, f^2, ... until the first repeat f^(m+k) == f^m; the idempotent
    powers are then exactly the multiples of k that are >= m.  ``cap`` bounds
    the number of powers visited (default size(X)!).
    """
    if cap is None:
        cap = max(math.factorial(cat.size(cat.dom(f))), 2) + 1
    seen = {}
    powers = [None]
    p = f
    k = 1
    while p not in seen:
        if k > cap:
            raise GuardExceeded(f"no repeat among the first {cap} powers")
        seen[p] = k
        powers.append(p)
        p = cat.compose(f, p)
        k += 1
    m = seen[p]
    period = k - m
    n = period * -(-m // period)
    return n, powers[n]


def split_idempotent(cat: CategoryInstance, idem):
    """Split an idempotent as ``(carrier, i, p)`` with ``p o i = 1``."""
    p, i = cat.factorize(idem)
    carrier = cat.dom(i)
    if not cat.equal(cat.compose(p, i), cat.identity(carrier)):
        raise ContractViolation("factorization of an idempotent is not a splitting")
    return carrier, i, p


def stabilization_from_powers(cat: CategoryInstance, f) -> int:
    """Least n with im f^(n+1) == im f^n, computed from explicit powers."""
    x = cat.dom(f)
    p = cat.identity(x)
    key = cat.image_key(p)
    for n in range(cat.size(x) + 1):
        q = cat.compose(f, p)
        next_key = cat.image_key(q)
        if next_key == key:
            return n
        p, key = q, next_key
    raise ContractViolation("images of powers did not stabilize within size(X) steps")


def eventual_image_idempotent_power(e: Endo) -> EventualImageData:
    cat, f = e.cat, e.f
    idem, exponent = cat.idempotent_in_powers(f)
    if not cat.equal(cat.compose(idem, idem), idem):
        raise ContractViolation("idempotent_in_powers returned a non-idempotent")
    carrier, i, p = split_idempotent(cat, idem)
    auto = cat.compose(p, cat.compose(f, i))
    return EventualImageData(
        carrier=carrier,
        iota=i,
        pi=p,
        idempotent=idem,
        auto=auto,
        auto_inv=cat.invert_automorphism(auto),
        stabilization_index=stabilization_from_powers(cat, f),
        exponent=exponent,
    )


def terminal_coalgebra(e: Endo) -> Subobject:
    """Greatest subobject A with A <= f(A): iterate A -> f(A) from the top."""
    cat, f = e.cat, e.f
    a = Subobject(e.obj, cat.identity(e.obj))
    for _ in range(cat.size(e.obj) + 1):
        _, emb = cat.factorize(cat.compose(f, a.j))
        if cat.image_key(emb) == cat.image_key(a.j):
            return a
        a = Subobject(cat.dom(emb), emb)
    raise ContractViolation("coalgebra iteration did not reach a fixpoint")


def initial_algebra_dual(e: Endo) -> Quotient:
    """The quotient X ->> X/~ that presents the eventual image as a colimit."""
    return e.cat.eventual_quotient(e.f)
