import itertools
import random

import pytest
from hypothesis import given
import hypothesis.strategies as st

from evimg.core import Endo, eventual_image_chain, eventual_image_idempotent_power
from evimg.fdvect import (
    FDVECT,
    char_poly,
    char_poly_expansion,
    check_fitting,
    conjugating_matrix,
    f_infinity_poly,
    fitting,
    generalized_eigenspace,
    idempotent_polynomial,
    invariant_factors,
    inverse_cayley_hamilton,
    linearly_periodic,
    matrix,
    max_finite_order,
    restrict,
    similar,
    williams_check,
)
from evimg.generate import random_matrix, random_unimodular
from evimg.linalg import (
    RatMatrix,
    RatPoly,
    SingularMatrixError,
    SubspaceBasis,
    image_basis,
    inverse,
    kernel_basis,
    poly_gcd,
)

from conftest import fdvect_endos, invertible_matrices, seeds

t = RatPoly.t()
I2 = RatMatrix.identity(2)
P = matrix([[1, 1], [0, 0]])  # a split idempotent


def test_fitting_examples():
    ei, ek = fitting(P)
    assert ei == SubspaceBasis(2, [(1, 0)])
    assert ek == SubspaceBasis(2, [(-1, 1)])
    ei, ek = fitting(matrix([[2, 1], [0, 3]]))
    assert ei.dim == 2 and ek.dim == 0
    ei, ek = fitting(matrix([[0, 1], [0, 0]]))
    assert ei.dim == 0 and ek.dim == 2


def test_char_poly_examples():
    assert char_poly(matrix([[0, 1], [1, 0]])) == t * t - 1
    assert char_poly(RatMatrix.identity(3)) == (1 - t) ** 3
    assert char_poly(P) == t * t - t
    assert char_poly(RatMatrix.zeros(0, 0)) == 1


def test_cayley_hamilton_inverse_examples():
    assert inverse_cayley_hamilton(I2) == I2
    swap = matrix([[0, 1], [1, 0]])
    assert inverse_cayley_hamilton(swap) == swap
    assert inverse_cayley_hamilton(matrix([[2]])) == matrix([["1/2"]])
    with pytest.raises(SingularMatrixError):
        inverse_cayley_hamilton(P)


def test_f_infinity_poly_examples():
    assert f_infinity_poly(P) == P
    g = matrix([[2, 1], [1, 1]])
    assert char_poly(g).eval_matrix(g) == RatMatrix.zeros(2, 2)
    assert f_infinity_poly(g) == I2
    assert f_infinity_poly(matrix([[0, 1, 2], [0, 0, 3], [0, 0, 0]])) == RatMatrix.zeros(3, 3)


def test_linearly_periodic_examples():
    n = matrix([[0, 1], [0, 0]])
    assert not linearly_periodic(n, (1, 0))
    assert linearly_periodic(matrix([[2, 1], [1, 1]]), (3, -7))
    assert linearly_periodic(P, (1, 0))
    assert not linearly_periodic(P, (0, 1))


def test_williams_examples():
    v = williams_check(P, P)
    assert v.passed and "p = 0" in v.detail
    v = williams_check(P, matrix([[1]]))
    assert v.passed and "p = 1" in v.detail
    assert williams_check(I2, matrix([[2]])).failed


def test_generalized_eigenspace_examples():
    assert generalized_eigenspace(matrix([[0, 1], [0, 0]]), 0) == SubspaceBasis.full(2)
    assert generalized_eigenspace(P, 1) == SubspaceBasis(2, [(1, 0)])
    assert generalized_eigenspace(P, 5).dim == 0


def test_invariant_factor_examples():
    assert invariant_factors(matrix([[0, 1], [0, 0]])) == [RatPoly.const(1), t * t]
    assert invariant_factors(RatMatrix.zeros(2, 2)) == [t, t]
    assert similar(P, P).passed
    assert similar(matrix([[0, 1], [0, 0]]), RatMatrix.zeros(2, 2)).failed
    assert similar(matrix([[0, 1], [1, 0]]), matrix([[1, 0], [0, -1]])).passed


def test_conjugating_matrix():
    a, b = matrix([[0, 1], [1, 0]]), matrix([[1, 0], [0, -1]])
    k = conjugating_matrix(a, b)
    assert k @ a == b @ k and image_basis(k).dim == 2
    assert conjugating_matrix(I2, matrix([[1, 1], [0, 1]])) is None


def test_max_finite_order():
    # largest finite order of an element of GL_n(Q)
    assert [max_finite_order(n) for n in range(1, 7)] == [2, 6, 6, 12, 12, 30]


def test_first_isomorphism_map_is_not_canonical():
    f = matrix([[2]])
    d = eventual_image_chain(Endo.of(FDVECT, f))
    assert d.pi @ d.iota == matrix([[1]])
    assert f != matrix([[1]])
    assert d.auto == f and d.idempotent == matrix([[1]])


def test_infinite_order_automorphism_uses_polynomial_idempotent():
    f = matrix([[2, 0], [0, 0]])
    d = eventual_image_idempotent_power(Endo.of(FDVECT, f))
    assert d.exponent is None
    assert d.idempotent == matrix([[1, 0], [0, 0]])
    d = eventual_image_idempotent_power(Endo.of(FDVECT, matrix([[-1, 1], [0, 0]])))
    assert d.exponent == 2


# --- oracles ---------------------------------------------------------------


def _poly_det(entries):
    n = len(entries)
    if n == 0:
        return RatPoly.const(1)
    total = RatPoly()
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in entries[1:]]
        term = entries[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinantal_invariant_factors(f):
    """Invariant factors as ratios of gcds of k x k minors of tI - f."""
    n = f.nrows
    a = [[(t if i == j else RatPoly()) - f[i, j] for j in range(n)] for i in range(n)]
    d = [RatPoly.const(1)]
    for k in range(1, n + 1):
        g = RatPoly()
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = poly_gcd(g, _poly_det([[a[r][c] for c in cols] for r in rows]))
        d.append(g.monic())
    return [d[k] // d[k - 1] for k in range(1, n + 1)]


@given(seeds, st.integers(0, 4))
def test_invariant_factors_match_determinantal_divisors(seed, n):
    f = random_matrix(random.Random(seed), n)
    assert invariant_factors(f) == determinantal_invariant_factors(f)


@given(seeds, st.integers(0, 4))
def test_char_poly_matches_expansion(seed, n):
    f = random_matrix(random.Random(seed), n)
    assert char_poly(f) == char_poly_expansion(f)


@given(seeds, st.integers(0, 4))
def test_invariant_factors_are_similarity_invariants(seed, n):
    rng = random.Random(seed)
    f = random_matrix(rng, n)
    p = random_unimodular(rng, n)
    g = p @ f @ inverse(p)
    assert similar(f, g).passed
    k = conjugating_matrix(f, g)
    assert k @ f == g @ k
    prod = RatPoly.const(1)
    for q in invariant_factors(f):
        prod = prod * q
    assert prod == char_poly(f) * ((-1) ** n)


# --- invariants --------------------------------------------------------------------


def projection_onto_ei_along_ek(f):
    ei, ek = fitting(f)
    b = RatMatrix.from_columns(ei.vectors + ek.vectors, f.nrows)
    keep = RatMatrix.diagonal([1] * ei.dim + [0] * ek.dim)
    return b @ keep @ inverse(b)


@given(fdvect_endos)
def test_fitting_and_polynomial_formula(e):
    f = e.f
    assert check_fitting(f).passed
    d = eventual_image_chain(e)
    proj = projection_onto_ei_along_ek(f)
    assert f_infinity_poly(f) == d.idempotent == proj
    ei, ek = fitting(f)
    assert kernel_basis(d.idempotent) == ek
    assert image_basis(d.idempotent) == ei
    r, n = idempotent_polynomial(f)
    assert r.coeff(0) == 0
    assert (r ** n).eval_matrix(f) == d.idempotent


@given(invertible_matrices(max_dim=6))
def test_cayley_hamilton_inverse(g):
    assert inverse_cayley_hamilton(g) @ g == RatMatrix.identity(g.nrows)


@given(fdvect_endos, st.data())
def test_linearly_periodic_iff_in_image_of_top_power(e, data):
    f = e.f
    n = f.nrows
    x = data.draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    top = image_basis(f ** n)
    assert linearly_periodic(f, x) == top.contains(x)
    for v in top.vectors:
        assert linearly_periodic(f, v)


@given(fdvect_endos)
def test_char_poly_splits_off_nilpotent_part(e):
    f = e.f
    ei, ek = fitting(f)
    chi_bar = char_poly(restrict(f, ei))
    assert char_poly(f) == chi_bar * (-t) ** ek.dim
    assert generalized_eigenspace(f, 0) == ek


@given(seeds, st.integers(1, 5))
def test_generalized_eigenspaces_fill_space_when_split(seed, n):
    rng = random.Random(seed)
    tri = RatMatrix(
        [[rng.randint(-2, 2) if j >= i else 0 for j in range(n)] for i in range(n)], ncols=n
    )
    p = random_unimodular(rng, n)
    f = p @ tri @ inverse(p)
    eigenvalues = {tri[i, i] for i in range(n)}
    assert sum(generalized_eigenspace(f, lam).dim for lam in eigenvalues) == n
    assert generalized_eigenspace(f, 3).dim == 0  # entries are within [-2, 2]


@given(fdvect_endos)
def test_williams_on_eventual_equivalence(e):
    d = eventual_image_chain(e)
    assert williams_check(e.f, d.auto).passed
