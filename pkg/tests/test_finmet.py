import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given

from evimg.core import Endo, GuardExceeded, eventual_image_chain
from evimg.finmet import (
    FINMET,
    FinMetric,
    factorize_short,
    max_epsilon_separated,
    quotient_metric,
    quotient_subspace_isometry,
    recurrent_points,
    short_map,
    sup_metric,
    unique_idempotent_in_closure,
    validate_metric,
)
from evimg.finset import periodic_points
from evimg.generate import random_base_metric, random_permutation, random_short_endo

from conftest import finmet_endos, seeds

# a, b, c with d(a,b) = 1, d(a,c) = 2, d(b,c) = 1
LINE = FinMetric([[0, 1, 2], [1, 0, 1], [2, 1, 0]])
# d(a,b) = 2, d(b,c) = 1, d(a,c) = 2
TRI = FinMetric([[0, 2, 2], [2, 0, 1], [2, 1, 0]])


def test_validate_metric_examples():
    assert validate_metric(LINE.d).passed
    v = validate_metric([[0, 0], [0, 0]])
    assert v.failed and "not positive" in v.detail
    v = validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert v.failed and "triangle" in v.detail
    assert validate_metric([[0, 1], [2, 0]]).failed
    assert validate_metric([["0", "1/2"], ["1/2", "0"]]).passed
    with pytest.raises(ValueError):
        FinMetric([[0, 1], [1, 1]])


def test_short_map_validation():
    with pytest.raises(ValueError, match="not short"):
        short_map(LINE, [0, 2, 0])  # d(f0, f1) = 2 > d(0, 1) = 1


def test_factorize_examples():
    cover, emb = factorize_short(short_map(LINE, [1, 1, 1]))
    assert emb.table == (1,) and cover.tgt.n == 1
    iso = short_map(LINE, [2, 1, 0])
    cover, emb = factorize_short(iso)
    assert FINMET.is_isometry(emb) and FINMET.is_invertible(cover)
    cover, emb = factorize_short(short_map(TRI, [1, 1, 1]))
    assert emb.table == (1,)


def test_quotient_metric_examples():
    q, labels = quotient_metric(short_map(LINE, [1, 1, 1]))
    assert q.n == 1 and labels == (0, 0, 0)
    q, labels = quotient_metric(short_map(LINE, [2, 1, 0]))
    assert q == LINE and labels == (0, 1, 2)
    q, labels = quotient_metric(short_map(TRI, [0, 1, 1]))
    assert labels == (0, 1, 1)
    assert q.d == ((0, 2), (2, 0))


def test_recurrent_points_examples():
    assert recurrent_points(short_map(LINE, [1, 1, 1])) == [1]
    assert recurrent_points(short_map(LINE, [2, 1, 0])) == [0, 1, 2]
    # the table [1, 2, 1, 2] is short for any metric making it so
    rng = random.Random(3)
    from evimg.generate import metric_making_short

    space = FinMetric(metric_making_short((1, 2, 1, 2), random_base_metric(rng, 4)))
    f = short_map(space, [1, 2, 1, 2])
    assert recurrent_points(f) == [1, 2]
    assert unique_idempotent_in_closure(f).table == (2, 1, 2, 1)


def test_max_epsilon_separated_examples():
    assert max_epsilon_separated(LINE, 3) == 1
    assert max_epsilon_separated(LINE, Fraction(1, 2)) == 3
    assert max_epsilon_separated(LINE, Fraction(3, 2)) == 2
    with pytest.raises(GuardExceeded):
        max_epsilon_separated(FinMetric([[int(i != j) for j in range(13)] for i in range(13)]), 1)


def test_sup_metric_examples():
    ident = short_map(LINE, [0, 1, 2])
    to_b = short_map(LINE, [1, 1, 1])
    assert sup_metric(ident, ident) == 0
    assert sup_metric(ident, to_b) == 1


def test_unique_idempotent_examples():
    iso = short_map(LINE, [2, 1, 0])
    assert unique_idempotent_in_closure(iso) == FINMET.identity(LINE)
    to_b = short_map(LINE, [1, 1, 1])
    assert unique_idempotent_in_closure(to_b) == to_b


def test_quotient_subspace_isometry_examples():
    assert quotient_subspace_isometry(short_map(LINE, [2, 1, 0])).passed
    assert quotient_subspace_isometry(short_map(LINE, [1, 1, 1])).passed
    v = quotient_subspace_isometry(short_map(TRI, [0, 1, 1]))
    assert v.passed and "[0, 1]" in v.detail


# --- invariants -----------------------------------------------------------------------


@given(seeds)
def test_self_isometry_is_surjective(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    space = FinMetric(random_base_metric(rng, n))
    for table in itertools.islice(itertools.product(range(n), repeat=n), 400):
        if FINMET.map_error(space, space, table) is None:
            f = FINMET.make(space, space, table)
            if FINMET.is_isometry(f):
                assert FINMET.is_surjective(f)


@given(finmet_endos)
def test_surjective_short_endo_is_isometry(e):
    if FINMET.is_covering(e.f):
        assert FINMET.is_isometry(e.f)
        assert FINMET.is_invertible(e.f)


@given(seeds)
def test_random_permutations_become_isometries(seed):
    rng = random.Random(seed)
    from evimg.generate import metric_making_short

    n = rng.randint(1, 6)
    perm = random_permutation(rng, n)
    space = FinMetric(metric_making_short(perm, random_base_metric(rng, n)))
    assert FINMET.is_isometry(FINMET.make(space, space, perm))


@given(finmet_endos)
def test_recurrent_points_match_finset_and_carrier(e):
    d = eventual_image_chain(e)
    assert recurrent_points(e.f) == periodic_points(e.f) == sorted(d.iota.table)


@given(finmet_endos)
def test_f_is_an_isometry_on_the_eventual_image(e):
    d = eventual_image_chain(e)
    restricted = FINMET.compose(e.f, d.iota)
    sub = d.iota.table
    dist = e.obj.d
    for a, b in itertools.combinations(range(len(sub)), 2):
        assert dist[restricted.table[a]][restricted.table[b]] == dist[sub[a]][sub[b]]


@given(finmet_endos)
def test_quotient_and_subspace_metrics_agree(e):
    assert quotient_subspace_isometry(e.f).passed
    assert unique_idempotent_in_closure(e.f) == eventual_image_chain(e).idempotent


@given(seeds)
def test_sup_metric_is_a_metric_and_composition_is_short(seed):
    rng = random.Random(seed)
    e = random_short_endo(rng, rng.randint(1, 5))
    space = e.src
    maps = [
        FINMET.make(space, space, t)
        for t in itertools.islice(itertools.product(range(space.n), repeat=space.n), 300)
        if FINMET.map_error(space, space, t) is None
    ]
    sample = [maps[rng.randrange(len(maps))] for _ in range(6)]
    for f, g, h in itertools.product(sample, repeat=3):
        assert sup_metric(f, g) == sup_metric(g, f)
        assert (sup_metric(f, g) == 0) == (f == g)
        assert sup_metric(f, h) <= sup_metric(f, g) + sup_metric(g, h)
        assert sup_metric(FINMET.compose(h, f), FINMET.compose(h, g)) <= sup_metric(f, g)
