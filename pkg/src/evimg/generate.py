"""Seeded random endomorphisms for property tests and the CLI suites.

Every generator takes a ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .core.category import Endo
from .fdvect import FDVECT
from .finmet import FINMET, FinMetric, ShortMap, _orbit_horizon
from .finposet import FINPOSET, FinPoset, MonotoneMap
from .finset import FINSET, fin
from .linalg import RatMatrix, inverse, rank


# --- finite sets -------------------------------------------------------------


def random_table(rng: random.Random, n: int) -> tuple[int, ...]:
    return tuple(rng.randrange(n) for _ in range(n))


def random_permutation(rng: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def all_finset_endos(max_size: int):
    for n in range(max_size + 1):
        for table in itertools.product(range(n), repeat=n):
            yield Endo(FINSET, n, fin(table))


def finset_corpus(rng: random.Random, count: int, max_size: int = 8, min_size: int = 0):
    for _ in range(count):
        n = rng.randint(min_size, max_size)
        yield Endo(FINSET, n, fin(random_table(rng, n)))


# --- rational matrices -----------------------------------------------------------


def _small(rng: random.Random, lo: int = -3, hi: int = 3):
    return rng.randint(lo, hi)


def _small_rational(rng: random.Random):
    return Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> RatMatrix:
    """A product of elementary integer row operations (det +-1)."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    if n and rng.random() < 0.5:
        rows[0] = [-a for a in rows[0]]
    return RatMatrix(rows, ncols=n)


def random_invertible(rng: random.Random, n: int) -> RatMatrix:
    while True:
        m = RatMatrix([[_small_rational(rng) for _ in range(n)] for _ in range(n)], ncols=n)
        if rank(m) == n:
            return m


def random_nilpotent(rng: random.Random, n: int) -> RatMatrix:
    """Strictly upper triangular."""
    return RatMatrix(
        [[_small(rng, -2, 2) if j > i else 0 for j in range(n)] for i in range(n)], ncols=n
    )


def block_diagonal(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    n, m = a.nrows, b.nrows
    rows = [list(r) + [0] * m for r in a.rows] + [[0] * n + list(r) for r in b.rows]
    return RatMatrix(rows, ncols=n + m)


def random_fitting_matrix(rng: random.Random, n: int) -> RatMatrix:
    """P blockdiag(A, N) P^-1 with A invertible and N nilpotent."""
    k = rng.randint(0, n)
    a = random_invertible(rng, k) if rng.random() < 0.5 else random_finite_order(rng, k)
    m = block_diagonal(a, random_nilpotent(rng, n - k))
    p = random_unimodular(rng, n)
    return p @ m @ inverse(p)


def random_finite_order(rng: random.Random, n: int) -> RatMatrix:
    """A signed permutation matrix conjugated by an integer unimodular matrix."""
    perm = random_permutation(rng, n)
    m = RatMatrix(
        [[rng.choice((-1, 1)) if perm[i] == j else 0 for j in range(n)] for i in range(n)], ncols=n
    )
    p = random_unimodular(rng, n)
    return p @ m @ inverse(p)


def random_low_rank(rng: random.Random, n: int) -> RatMatrix:
    r = rng.randint(0, n)
    b = RatMatrix([[_small(rng) for _ in range(r)] for _ in range(n)], ncols=r)
    c = RatMatrix([[_small(rng) for _ in range(n)] for _ in range(r)], ncols=n)
    return b @ c


def random_plain(rng: random.Random, n: int) -> RatMatrix:
    return RatMatrix([[_small_rational(rng) for _ in range(n)] for _ in range(n)], ncols=n)


MATRIX_KINDS = {
    "fitting": random_fitting_matrix,
    "finite-order": random_finite_order,
    "low-rank": random_low_rank,
    "plain": random_plain,
    "nilpotent": random_nilpotent,
}


def random_matrix(rng: random.Random, n: int, kind: str | None = None) -> RatMatrix:
    kind = kind or rng.choice(("fitting", "fitting", "finite-order", "low-rank", "plain", "nilpotent"))
    return MATRIX_KINDS[kind](rng, n)


def fdvect_corpus(rng: random.Random, count: int, max_dim: int = 6):
    for _ in range(count):
        n = rng.randint(0, max_dim)
        yield Endo(FDVECT, n, random_matrix(rng, n))


def random_poly_in(rng: random.Random, f: RatMatrix, degree: int = 3) -> RatMatrix:
    """c0 + c1 f + ... with small integer coefficients."""
    n = f.nrows
    acc = RatMatrix.zeros(n, n)
    for _ in range(degree + 1):
        acc = acc @ f + RatMatrix.identity(n).scale(_small(rng, -2, 2))
    return acc


def commuting_matrix_pair(rng: random.Random, n: int) -> tuple[RatMatrix, RatMatrix]:
    """Commuting, simultaneously triangularizable: P T P^-1 and P q(T) P^-1
    with T upper triangular, or P D1 P^-1 and P D2 P^-1 with D1, D2 diagonal."""
    p = random_unimodular(rng, n)
    p_inv = inverse(p)
    if rng.random() < 0.5:
        t = RatMatrix(
            [[_small(rng, -2, 2) if j >= i else 0 for j in range(n)] for i in range(n)], ncols=n
        )
        a, b = t, random_poly_in(rng, t)
    else:
        a = RatMatrix.diagonal([_small(rng, -2, 2) for _ in range(n)])
        b = RatMatrix.diagonal([_small(rng, -2, 2) for _ in range(n)])
    return p @ a @ p_inv, p @ b @ p_inv


# --- finite metric spaces ----------------------------------------------------------


def random_base_metric(rng: random.Random, n: int):
    """Distances in [1, 2] (always a metric), or distinct points on a line."""
    if rng.random() < 0.5:
        d = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                d[i][j] = d[j][i] = 1 + Fraction(rng.randint(0, 6), 6)
        return d
    pts = rng.sample(range(4 * n + 1), n)
    return [[Fraction(abs(a - b), 2) for b in pts] for a in pts]


def metric_making_short(table, rho) -> list[list[Fraction]]:
    """d(x, y) = max_k rho(f^k x, f^k y); f is short for d and d >= rho."""
    n = len(table)
    horizon = _orbit_horizon(ShortMap(None, None, tuple(table))) + 1
    d = [[rho[x][y] for y in range(n)] for x in range(n)]
    cur = list(range(n))
    for _ in range(horizon):
        cur = [table[x] for x in cur]
        for x in range(n):
            for y in range(n):
                v = rho[cur[x]][cur[y]]
                if v > d[x][y]:
                    d[x][y] = v
    return d


def random_short_endo(rng: random.Random, n: int) -> ShortMap:
    table = random_table(rng, n) if rng.random() < 0.85 else random_permutation(rng, n)
    space = FinMetric(metric_making_short(table, random_base_metric(rng, n)))
    return FINMET.make(space, space, table)


def finmet_corpus(rng: random.Random, count: int, max_size: int = 6, min_size: int = 0):
    for _ in range(count):
        n = rng.randint(min_size, max_size)
        f = random_short_endo(rng, n)
        yield Endo(FINMET, f.src, f)


# --- finite posets -----------------------------------------------------------------


def random_poset(rng: random.Random, n: int, density: float | None = None) -> FinPoset:
    """Transitive closure of a random DAG on shuffled labels."""
    density = rng.random() if density is None else density
    order = random_permutation(rng, n)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density * 0.6:
                leq[order[a]][order[b]] = True
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                for j in range(n):
                    if leq[k][j]:
                        leq[i][j] = True
    return FinPoset(tuple(map(tuple, leq)))


def _linear_extension(poset: FinPoset) -> list[int]:
    n = poset.n
    below = [sum(poset.leq[j][i] for j in range(n)) for i in range(n)]
    return sorted(range(n), key=lambda i: below[i])


def random_monotone(rng: random.Random, poset: FinPoset, tries: int = 50) -> MonotoneMap:
    """Assign values in a linear extension, each above the images of all
    lower points; restart on a dead end, falling back to a constant map."""
    n = poset.n
    leq = poset.leq
    ext = _linear_extension(poset)
    for _ in range(tries):
        table = [None] * n
        for x in ext:
            lower = [table[z] for z in range(n) if z != x and leq[z][x]]
            options = [y for y in range(n) if all(leq[v][y] for v in lower)]
            if not options:
                break
            table[x] = rng.choice(options)
        else:
            return FINPOSET.make(poset, poset, table)
    c = rng.randrange(n)
    return FINPOSET.make(poset, poset, [c] * n)


def finposet_corpus(rng: random.Random, count: int, max_size: int = 6, min_size: int = 0):
    for _ in range(count):
        n = rng.randint(min_size, max_size)
        poset = random_poset(rng, n)
        if n == 0:
            f = FINPOSET.make(poset, poset, ())
        else:
            f = random_monotone(rng, poset)
        yield Endo(FINPOSET, poset, f)


CORPORA = {
    "finset": finset_corpus,
    "fdvect": fdvect_corpus,
    "finmet": finmet_corpus,
    "finposet": finposet_corpus,
}
