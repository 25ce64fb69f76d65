"""Cross-category verifiers for the identities satisfied by eventual images."""

from __future__ import annotations

from .algorithms import (
    eventual_image_chain,
    eventual_image_idempotent_power,
    initial_algebra_dual,
    power,
    terminal_coalgebra,
)
from .category import (
    HYPOTHESIS_FAILS,
    CategoryInstance,
    Endo,
    EventualImageData,
    Verdict,
)


def _mismatch(cat, what, lhs, rhs) -> Verdict:
    return Verdict.fail(f"{what}: lhs={cat.describe(lhs)} rhs={cat.describe(rhs)}")


def _equations(cat, equations):
    for what, lhs, rhs in equations:
        if not cat.equal(lhs, rhs):
            return _mismatch(cat, what, lhs, rhs)
    return None


def check_splitting(e: Endo, data: EventualImageData) -> Verdict:
    """All identities of the splitting data, including the first few cone
    identities iota o auto^n == f^n o iota and auto^n o pi == pi o f^n."""
    cat, f = e.cat, e.f
    iota, pi, idem = data.iota, data.pi, data.idempotent
    auto, auto_inv = data.auto, data.auto_inv
    ident_e = cat.identity(data.carrier)
    if not cat.is_embedding(iota):
        return Verdict.fail(f"iota is not an embedding: {cat.describe(iota)}")
    if not cat.is_covering(pi):
        return Verdict.fail(f"pi is not a covering: {cat.describe(pi)}")
    bad = _equations(
        cat,
        [
            ("pi o iota == 1", cat.compose(pi, iota), ident_e),
            ("idempotent == iota o pi", idem, cat.compose(iota, pi)),
            ("idempotent^2 == idempotent", cat.compose(idem, idem), idem),
            ("f o idempotent == idempotent o f", cat.compose(f, idem), cat.compose(idem, f)),
            ("auto o auto_inv == 1", cat.compose(auto, auto_inv), ident_e),
            ("auto_inv o auto == 1", cat.compose(auto_inv, auto), ident_e),
            ("iota o auto == f o iota", cat.compose(iota, auto), cat.compose(f, iota)),
            ("auto o pi == pi o f", cat.compose(auto, pi), cat.compose(pi, f)),
        ],
    )
    if bad is not None:
        return bad
    fn, an = cat.identity(e.obj), ident_e
    for n in range(1, 3 * data.stabilization_index + 2):
        fn, an = cat.compose(f, fn), cat.compose(auto, an)
        bad = _equations(
            cat,
            [
                (f"iota o auto^{n} == f^{n} o iota", cat.compose(iota, an), cat.compose(fn, iota)),
                (f"auto^{n} o pi == pi o f^{n}", cat.compose(an, pi), cat.compose(pi, fn)),
            ],
        )
        if bad is not None:
            return bad
    return Verdict.ok("splitting identities hold")


def compare_eventual_images(cat: CategoryInstance, a: EventualImageData, b: EventualImageData) -> Verdict:
    """Equal idempotents, and the canonical isomorphism b.pi o a.iota
    conjugates a.auto to b.auto."""
    if not cat.equal(a.idempotent, b.idempotent):
        return _mismatch(cat, "idempotents differ", a.idempotent, b.idempotent)
    k = cat.compose(b.pi, a.iota)
    k_inv = cat.compose(a.pi, b.iota)
    bad = _equations(
        cat,
        [
            ("k o k^-1 == 1", cat.compose(k, k_inv), cat.identity(b.carrier)),
            ("k^-1 o k == 1", cat.compose(k_inv, k), cat.identity(a.carrier)),
            ("k o auto_a == auto_b o k", cat.compose(k, a.auto), cat.compose(b.auto, k)),
        ],
    )
    return bad if bad is not None else Verdict.ok("equal idempotents, conjugate automorphisms")


def algorithms_agree(e: Endo) -> Verdict:
    return compare_eventual_images(e.cat, eventual_image_chain(e), eventual_image_idempotent_power(e))


def induced_map(u, ef: Endo, eg: Endo, eif: EventualImageData | None = None,
                eig: EventualImageData | None = None):
    """u_* = pi_g o u o iota_f for a map u: (X, f) -> (Y, g)."""
    cat = ef.cat
    if not cat.equal(cat.compose(u, ef.f), cat.compose(eg.f, u)):
        raise ValueError("u does not intertwine f and g (u o f != g o u)")
    eif = eif or eventual_image_chain(ef)
    eig = eig or eventual_image_chain(eg)
    return cat.compose(eig.pi, cat.compose(u, eif.iota))


def check_induced(u, ef: Endo, eg: Endo) -> Verdict:
    cat = ef.cat
    if not cat.equal(cat.compose(u, ef.f), cat.compose(eg.f, u)):
        return Verdict(HYPOTHESIS_FAILS, "u o f != g o u")
    eif, eig = eventual_image_chain(ef), eventual_image_chain(eg)
    u_star = induced_map(u, ef, eg, eif, eig)
    bad = _equations(
        cat,
        [
            ("u_* o auto_f == auto_g o u_*", cat.compose(u_star, eif.auto), cat.compose(eig.auto, u_star)),
            ("u o f^inf == g^inf o u", cat.compose(u, eif.idempotent), cat.compose(eig.idempotent, u)),
        ],
    )
    return bad if bad is not None else Verdict.ok("induced map intertwines the eventual data")


def check_timescale(e: Endo, n: int) -> Verdict:
    """(f^n)^inf == f^inf and ei(f^n) is canonically isomorphic to ei(f)."""
    if n < 1:
        raise ValueError("n must be positive")
    cat = e.cat
    base = eventual_image_chain(e)
    scaled = eventual_image_chain(Endo(cat, e.obj, power(cat, e.f, n)))
    if not cat.equal(base.idempotent, scaled.idempotent):
        return _mismatch(cat, f"(f^{n})^inf != f^inf", scaled.idempotent, base.idempotent)
    k = cat.compose(scaled.pi, base.iota)
    k_inv = cat.compose(base.pi, scaled.iota)
    bad = _equations(
        cat,
        [
            ("k o k^-1 == 1", cat.compose(k, k_inv), cat.identity(scaled.carrier)),
            ("k^-1 o k == 1", cat.compose(k_inv, k), cat.identity(base.carrier)),
        ],
    )
    return bad if bad is not None else Verdict.ok(f"(f^{n})^inf == f^inf")


def check_commuting_product(f: Endo, g: Endo) -> Verdict:
    """(g o f)^inf == g^inf o f^inf for commuting f and g."""
    cat = f.cat
    gf, fg = cat.compose(g.f, f.f), cat.compose(f.f, g.f)
    if not cat.equal(gf, fg):
        return Verdict(
            HYPOTHESIS_FAILS,
            f"f and g do not commute: g o f={cat.describe(gf)} f o g={cat.describe(fg)}",
        )
    lhs = eventual_image_chain(Endo(cat, f.obj, gf)).idempotent
    rhs = cat.compose(eventual_image_chain(g).idempotent, eventual_image_chain(f).idempotent)
    if not cat.equal(lhs, rhs):
        return _mismatch(cat, "(gf)^inf != g^inf f^inf", lhs, rhs)
    return Verdict.ok("(gf)^inf == g^inf f^inf")


def check_vu_uv(cat: CategoryInstance, u, v) -> Verdict:
    """(ei vu, auto) and (ei uv, auto) are isomorphic for u: X -> Y, v: Y -> X."""
    x, y = cat.dom(u), cat.cod(u)
    if cat.dom(v) != y or cat.cod(v) != x:
        return Verdict(HYPOTHESIS_FAILS, "u and v are not composable both ways")
    evu = Endo(cat, x, cat.compose(v, u))
    euv = Endo(cat, y, cat.compose(u, v))
    a, b = eventual_image_chain(evu), eventual_image_chain(euv)
    # u and v are maps (X, vu) <-> (Y, uv), so u_* is an isomorphism with
    # v_* o u_* the automorphism of ei(vu)
    u_star = induced_map(u, evu, euv, a, b)
    v_star = induced_map(v, euv, evu, b, a)
    bad = _equations(
        cat,
        [
            ("v_* o u_* == auto_vu", cat.compose(v_star, u_star), a.auto),
            ("u_* o v_* == auto_uv", cat.compose(u_star, v_star), b.auto),
            ("u_* o auto_vu == auto_uv o u_*", cat.compose(u_star, a.auto), cat.compose(b.auto, u_star)),
        ],
    )
    if bad is not None:
        return bad
    k = cat.find_conjugator(a.auto, b.auto)
    if k is None:
        return Verdict.fail(
            f"automorphisms not conjugate: auto_vu={cat.describe(a.auto)} auto_uv={cat.describe(b.auto)}"
        )
    return Verdict.ok("ei(vu) and ei(uv) are isomorphic as automorphisms")


def shift_equivalence_verify(f: Endo, g: Endo, u, v, n: int) -> Verdict:
    cat = f.cat
    bad = _equations(
        cat,
        [
            ("u o f == g o u", cat.compose(u, f.f), cat.compose(g.f, u)),
            ("v o g == f o v", cat.compose(v, g.f), cat.compose(f.f, v)),
            (f"v o u == f^{n}", cat.compose(v, u), power(cat, f.f, n)),
            (f"u o v == g^{n}", cat.compose(u, v), power(cat, g.f, n)),
        ],
    )
    return bad if bad is not None else Verdict.ok(f"shift equivalence with lag {n}")


def eventual_equivalence_witness(f: Endo, g: Endo):
    """Maps (u, v) with v o u == f^inf and u o v == g^inf, or None."""
    cat = f.cat
    a, b = eventual_image_chain(f), eventual_image_chain(g)
    k = cat.find_conjugator(a.auto, b.auto)
    if k is None:
        return None
    k_inv = cat.inverse(k)
    u = cat.compose(b.iota, cat.compose(k, a.pi))
    v = cat.compose(a.iota, cat.compose(k_inv, b.pi))
    if not (
        cat.equal(cat.compose(v, u), a.idempotent)
        and cat.equal(cat.compose(u, v), b.idempotent)
        and cat.equal(cat.compose(u, f.f), cat.compose(g.f, u))
        and cat.equal(cat.compose(v, g.f), cat.compose(f.f, v))
    ):
        raise AssertionError("constructed eventual equivalence failed its own check")
    return u, v


def check_coalgebra_agrees(e: Endo) -> Verdict:
    """The terminal coalgebra and the eventual image are the same subobject."""
    cat = e.cat
    tc = terminal_coalgebra(e)
    data = eventual_image_chain(e)
    if cat.image_key(tc.j) != cat.image_key(data.iota):
        return _mismatch(cat, "terminal coalgebra != eventual image", tc.j, data.iota)
    return Verdict.ok("terminal coalgebra is the eventual image")


def check_quotient_agrees(e: Endo) -> Verdict:
    """The colimit quotient is isomorphic to ei f through a pi-compatible map."""
    cat = e.cat
    quo = initial_algebra_dual(e)
    data = eventual_image_chain(e)
    phi = cat.compose(quo.q, data.iota)
    if not cat.is_invertible(phi):
        return Verdict.fail(f"q o iota is not invertible: {cat.describe(phi)}")
    bad = _equations(cat, [("q == (q o iota) o pi", quo.q, cat.compose(phi, data.pi))])
    return bad if bad is not None else Verdict.ok("quotient is isomorphic to the eventual image")
