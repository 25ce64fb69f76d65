"""Finite-dimensional vector spaces over Q.

Objects are dimensions and morphisms are ``RatMatrix`` values acting on
column vectors, so a map Q^n -> Q^m is an m x n matrix.  Embeddings are the
injective maps and coverings the surjective ones.
"""

from __future__ import annotations

import itertools
import math
import random

from .core.algorithms import idempotent_power_search
from .core.category import (
    CategoryInstance,
    ContractViolation,
    GuardExceeded,
    Quotient,
    Verdict,
)
from .linalg import (
    ONE,
    ZERO,
    RatMatrix,
    RatPoly,
    SingularMatrixError,
    SubspaceBasis,
    image_basis,
    inverse,
    kernel_basis,
    rank,
    rat,
    rat_str,
    solve,
)

__all__ = [
    "FDVECT",
    "FDVect",
    "char_poly",
    "char_poly_expansion",
    "check_fitting",
    "conjugating_matrix",
    "f_infinity_poly",
    "fitting",
    "generalized_eigenspace",
    "idempotent_polynomial",
    "image_basis",
    "invariant_factors",
    "inverse_cayley_hamilton",
    "kernel_basis",
    "linearly_periodic",
    "matrix",
    "max_finite_order",
    "rank",
    "restrict",
    "similar",
    "williams_check",
]


def matrix(rows, ncols: int | None = None) -> RatMatrix:
    return RatMatrix(rows, ncols)


# --- characteristic polynomial -----------------------------------------------


def char_poly(f: RatMatrix) -> RatPoly:
    """det(f - tI) by the Faddeev-LeVerrier recurrence."""
    if not f.is_square:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = f.nrows
    # c[k] are the coefficients of det(tI - f); c[n] = 1
    c = [ZERO] * (n + 1)
    c[n] = ONE
    ident = RatMatrix.identity(n)
    m = RatMatrix.zeros(n, n)
    for k in range(1, n + 1):
        m = f @ m + ident.scale(c[n - k + 1])
        c[n - k] = -(f @ m).trace() / k
    p = RatPoly(c)
    return p if n % 2 == 0 else -p


def char_poly_expansion(f: RatMatrix) -> RatPoly:
    """det(f - tI) by cofactor expansion of the polynomial matrix."""
    n = f.nrows
    entries = [
        [RatPoly([f[i, j], -1]) if i == j else RatPoly([f[i, j]]) for j in range(n)]
        for i in range(n)
    ]

    def expand(rows: list[int], cols: list[int]) -> RatPoly:
        if not rows:
            return RatPoly.const(1)
        total = RatPoly()
        r, rest = rows[0], rows[1:]
        for idx, c in enumerate(cols):
            entry = entries[r][c]
            if entry.is_zero():
                continue
            minor = expand(rest, cols[:idx] + cols[idx + 1 :])
            term = entry * minor
            total = total + term if idx % 2 == 0 else total - term
        return total

    return expand(list(range(n)), list(range(n)))


def _strip_t(chi: RatPoly) -> tuple[RatPoly, int]:
    """Write chi = (-t)^i * rest with rest(0) != 0."""
    i = chi.t_valuation()
    rest = RatPoly(chi.coeffs[i:])
    return (rest if i % 2 == 0 else -rest), i


# --- inverses ---------------------------------------------------------------


def inverse_cayley_hamilton(g: RatMatrix) -> RatMatrix:
    """g^-1 as q(g) with q(t) = (det g - chi_g(t)) / ((det g) t).

    Cross-checked against Gauss-Jordan elimination.
    """
    chi = char_poly(g)
    d = chi.coeff(0)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    q, r = (RatPoly.const(d) - chi).divmod(RatPoly.t())
    if not r.is_zero():
        raise ContractViolation("det g - chi_g(t) is not divisible by t")
    result = (q * (ONE / d)).eval_matrix(g)
    if result != inverse(g):
        raise ContractViolation("Cayley-Hamilton inverse disagrees with elimination")
    return result


# --- Fitting decomposition -----------------------------------------------------


def fitting(f: RatMatrix) -> tuple[SubspaceBasis, SubspaceBasis]:
    """(ei f, ek f) = (im f^dim, ker f^dim)."""
    if not f.is_square:
        raise ValueError("not an endomorphism")
    fn = f ** f.nrows
    return image_basis(fn), kernel_basis(fn)


def check_fitting(f: RatMatrix) -> Verdict:
    n = f.nrows
    ei, ek = fitting(f)
    both = RatMatrix.from_columns(ei.vectors + ek.vectors, n)
    if both.ncols != n or rank(both) != n:
        return Verdict.fail(f"ei {ei} and ek {ek} do not give a direct sum")
    b = ei.as_columns()
    coords = solve(b, f @ b)
    if coords is None:
        return Verdict.fail(f"f does not map ei {ei} into itself")
    if rank(coords) != ei.dim:
        return Verdict.fail("f is not invertible on ei")
    k = ek.as_columns()
    if not (f ** max(ek.dim, 1) @ k).is_zero():
        return Verdict.fail(f"f is not nilpotent on ek {ek}")
    return Verdict.ok(f"Q^{n} = ei ({ei.dim}) + ek ({ek.dim})")


def restrict(f: RatMatrix, basis: SubspaceBasis) -> RatMatrix:
    """Matrix of f on an invariant subspace, in the given basis."""
    b = basis.as_columns()
    coords = solve(b, f @ b)
    if coords is None:
        raise ValueError("subspace is not invariant")
    return coords


def idempotent_polynomial(f: RatMatrix) -> tuple[RatPoly, int]:
    """The polynomial r(t)^n with f^inf = r(f)^n, and n = dim X.

    r(t) = 1 - chi_fbar(t) / det(fbar), where chi_fbar is chi_f with its
    factor (-t)^i removed; r has no constant term, so f^inf lies in the span
    of f, f^2, ...
    """
    chi_bar, _ = _strip_t(char_poly(f))
    det_bar = chi_bar.coeff(0)
    r = RatPoly.const(1) - chi_bar * (ONE / det_bar)
    return r, f.nrows


def f_infinity_poly(f: RatMatrix) -> RatMatrix:
    """(1 - chi_fbar(f) / det fbar)^n with fbar = f restricted to ei f.

    A zero-dimensional ei has chi = 1 and det = 1, so the base is 0.
    """
    n = f.nrows
    ei, _ = fitting(f)
    fbar = restrict(f, ei)
    chi_bar = char_poly(fbar)
    det_bar = chi_bar.coeff(0)
    base = RatMatrix.identity(n) - chi_bar.eval_matrix(f).scale(ONE / det_bar)
    return base ** n


def linearly_periodic(f: RatMatrix, x) -> bool:
    """Whether x is in span{f x, f^2 x, ..., f^dim x}."""
    x = tuple(rat(v) for v in x)
    n = f.nrows
    krylov = []
    y = x
    for _ in range(n):
        y = f.apply(y)
        krylov.append(y)
    return SubspaceBasis(n, krylov).contains(x)


def generalized_eigenspace(f: RatMatrix, lam) -> SubspaceBasis:
    n = f.nrows
    shifted = f - RatMatrix.identity(n).scale(rat(lam))
    return kernel_basis(shifted ** n)


def williams_check(f: RatMatrix, g: RatMatrix) -> Verdict:
    """chi_f == +-t^p chi_g, reporting p and the sign."""
    pf, i = _strip_t(char_poly(f))
    pg, j = _strip_t(char_poly(g))
    if pf != pg:
        return Verdict.fail(f"chi_f and chi_g differ beyond +-t^p: {pf} vs {pg}")
    p = i - j
    sign = "+" if p % 2 == 0 else "-"
    return Verdict.ok(f"chi_f = {sign}t^{p} chi_g (p = {p})")


# --- invariant factors ------------------------------------------------------------


def smith_diagonal(entries: list[list[RatPoly]]) -> list[RatPoly]:
    """Diagonal of the Smith normal form of a square matrix over Q[t],
    normalized monic, each dividing the next."""
    a = [list(row) for row in entries]
    n = len(a)
    for k in range(n):
        while True:
            pivot = None
            for i in range(k, n):
                for j in range(k, n):
                    if not a[i][j].is_zero() and (pivot is None or a[i][j].degree < pivot[2]):
                        pivot = (i, j, a[i][j].degree)
            if pivot is None:
                return [a[i][i].monic() for i in range(n)]
            i, j, _ = pivot
            a[k], a[i] = a[i], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            p = a[k][k]
            clean = True
            for i in range(k + 1, n):
                if a[i][k].is_zero():
                    continue
                q, r = a[i][k].divmod(p)
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                clean = clean and r.is_zero()
            for j in range(k + 1, n):
                if a[k][j].is_zero():
                    continue
                q, r = a[k][j].divmod(p)
                for row in a:
                    row[j] = row[j] - q * row[k]
                clean = clean and r.is_zero()
            if not clean:
                continue
            bad = next(
                (i for i in range(k + 1, n) for j in range(k + 1, n) if not (a[i][j] % p).is_zero()),
                None,
            )
            if bad is None:
                break
            a[k] = [x + y for x, y in zip(a[k], a[bad])]
    return [a[i][i].monic() for i in range(n)]


def invariant_factors(f: RatMatrix) -> list[RatPoly]:
    """Smith normal form diagonal of tI - f (trivial factors 1 included)."""
    n = f.nrows
    entries = [
        [RatPoly([-f[i, j], 1]) if i == j else RatPoly([-f[i, j]]) for j in range(n)]
        for i in range(n)
    ]
    return smith_diagonal(entries)


def _describe_factors(factors) -> str:
    return "[" + ", ".join(str(p) for p in factors) + "]"


def similar(f: RatMatrix, g: RatMatrix) -> Verdict:
    if f.shape != g.shape:
        return Verdict.fail(f"dimensions differ: {f.shape} vs {g.shape}")
    a, b = invariant_factors(f), invariant_factors(g)
    if a != b:
        return Verdict.fail(f"invariant factors differ: {_describe_factors(a)} vs {_describe_factors(b)}")
    return Verdict.ok(f"invariant factors {_describe_factors(a)}")


def conjugating_matrix(a: RatMatrix, b: RatMatrix, seed: int = 0, tries: int = 64):
    """An invertible k with k a == b k, or None when a and b are not similar.

    The solutions of k a = b k form a linear space; when a and b are similar
    its invertible elements are a nonempty Zariski-open subset, so a random
    integer combination of a basis is invertible with high probability.
    """
    if not similar(a, b):
        return None
    n = a.nrows
    if n == 0:
        return RatMatrix.zeros(0, 0)
    rows = []
    for i, j in itertools.product(range(n), repeat=2):
        row = [ZERO] * (n * n)
        for l in range(n):
            row[i * n + l] += a[l, j]
            row[l * n + j] -= b[i, l]
        rows.append(row)
    space = kernel_basis(RatMatrix(rows, ncols=n * n)).vectors
    rng = random.Random(seed)
    for attempt in range(tries):
        coeffs = [1] * len(space) if attempt == 0 else [rng.randint(-1000, 1000) for _ in space]
        flat = [sum((c * v[idx] for c, v in zip(coeffs, space)), ZERO) for idx in range(n * n)]
        k = RatMatrix([flat[i * n : (i + 1) * n] for i in range(n)], ncols=n)
        if rank(k) == n:
            return k
    raise ContractViolation("similar matrices but no invertible intertwiner found")


# --- finite-order bound --------------------------------------------------------


def _totient(m: int) -> int:
    result = m
    p = 2
    x = m
    while p * p <= x:
        if x % p == 0:
            while x % p == 0:
                x //= p
            result -= result // p
        p += 1
    if x > 1:
        result -= result // x
    return result


def max_finite_order(dim: int) -> int:
    """Largest finite multiplicative order of an invertible dim x dim rational
    matrix: the max lcm of distinct m with sum of totients <= dim."""
    cands = [m for m in range(1, 2 * dim * dim + 3) if _totient(m) <= dim]
    best = 1

    def search(i: int, budget: int, acc: int):
        nonlocal best
        best = max(best, acc)
        for j in range(i, len(cands)):
            t = _totient(cands[j])
            if t <= budget:
                search(j + 1, budget - t, math.lcm(acc, cands[j]))

    search(0, dim, 1)
    return best


# --- the category ---------------------------------------------------------------


class FDVect(CategoryInstance):
    name = "fdvect"

    def dom(self, m):
        return m.ncols

    def cod(self, m):
        return m.nrows

    def compose(self, g, f):
        return g @ f

    def identity(self, obj):
        return RatMatrix.identity(obj)

    def size(self, obj) -> int:
        return obj

    def validate(self, m) -> None:
        if not isinstance(m, RatMatrix):
            raise ValueError("expected a RatMatrix")

    def factorize(self, m):
        # the embedding is the reduced echelon basis of the column space, which
        # is the identity on the pivot rows, so the covering is m on those rows
        basis = image_basis(m)
        return m.select_rows(basis.pivots), basis.as_columns()

    def is_embedding(self, m) -> bool:
        return rank(m) == m.ncols

    def is_covering(self, m) -> bool:
        return rank(m) == m.nrows

    def image_key(self, m):
        return image_basis(m)

    def image_leq(self, m1, m2) -> bool:
        return image_basis(m1).issubspace(image_basis(m2))

    def invert_automorphism(self, a):
        return inverse_cayley_hamilton(a)

    def inverse(self, iso):
        return inverse(iso)

    def find_conjugator(self, a, b):
        return conjugating_matrix(a, b)

    def idempotent_in_powers(self, f):
        chi_bar, _ = _strip_t(char_poly(f))
        # a finite-order automorphism part has an integral characteristic
        # polynomial with constant term +-1
        if chi_bar.is_integral() and abs(chi_bar.coeff(0)) == 1:
            n = f.nrows
            try:
                exponent, idem = idempotent_power_search(self, f, cap=n + max_finite_order(n))
                return idem, exponent
            except GuardExceeded:
                pass
        r, n = idempotent_polynomial(f)
        return r.eval_matrix(f) ** n, None

    def eventual_quotient(self, f) -> Quotient:
        """X ->> X/ek f, in coordinates on the non-pivot positions of ek."""
        n = f.nrows
        _, ek = fitting(f)
        keep = [j for j in range(n) if j not in ek.pivots]
        cols = []
        for j in range(n):
            v = [ONE if i == j else ZERO for i in range(n)]
            for row, p in zip(ek.vectors, ek.pivots):
                if v[p] != 0:
                    c = v[p]
                    v = [x - c * y for x, y in zip(v, row)]
            cols.append([v[i] for i in keep])
        q = RatMatrix.from_columns(cols, len(keep))
        return Quotient(len(keep), q)

    def subobject_candidates(self, f, carrier_emb, guard: int):
        """E itself and E + span{x, f x, f^2 x, ...} for each standard basis
        vector and each eventual-kernel basis vector x."""
        n = f.nrows
        e = image_basis(carrier_emb)
        _, ek = fitting(f)
        out = [carrier_emb]
        starts = list(RatMatrix.identity(n).rows) + list(ek.vectors)
        for x in starts:
            if e.contains(x):
                continue
            orbit = [x]
            for _ in range(n):
                orbit.append(f.apply(orbit[-1]))
            out.append((e + SubspaceBasis(n, orbit)).as_columns())
        return out, False

    def describe(self, m):
        return [[rat_str(x) for x in row] for row in m.rows]

    def describe_object(self, obj):
        return {"dim": obj}


FDVECT = FDVect()
