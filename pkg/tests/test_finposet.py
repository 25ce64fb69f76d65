import random

import pytest
from hypothesis import given

from evimg.core import Endo, eventual_image_chain, eventual_image_idempotent_power
from evimg.finposet import (
    FINPOSET,
    FinPoset,
    eventual_image_poset,
    factorize_monotone,
    monotone,
    order_error,
)
from evimg.finset import FINSET, fin
from evimg.generate import random_monotone, random_poset

from conftest import finposet_endos, finset_tables, seeds

CHAIN3 = FinPoset.chain(3)


def test_order_validation_takes_no_closure():
    # 0 <= 1 <= 2 without 0 <= 2
    leq = [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    assert "not transitive" in order_error(leq)
    with pytest.raises(ValueError, match="transitive"):
        FinPoset(leq)
    with pytest.raises(ValueError, match="antisymmetric"):
        FinPoset([[1, 1], [1, 1]])
    with pytest.raises(ValueError, match="reflexive"):
        FinPoset([[0]])


def test_monotone_validation():
    with pytest.raises(ValueError, match="not monotone"):
        monotone(CHAIN3, [2, 1, 0])


def test_factorize_examples():
    ident = monotone(CHAIN3, [0, 1, 2])
    cover, emb = factorize_monotone(ident)
    assert FINPOSET.is_invertible(cover) and emb.table == (0, 1, 2)
    cover, emb = factorize_monotone(monotone(CHAIN3, [0, 0, 1]))
    assert emb.table == (0, 1)
    assert cover.tgt == FinPoset.chain(2)
    cover, emb = factorize_monotone(monotone(CHAIN3, [2, 2, 2]))
    assert emb.table == (2,) and cover.tgt.n == 1


def test_eventual_image_examples():
    d = eventual_image_poset(monotone(CHAIN3, [0, 0, 1]))
    assert d.iota.table == (0,)
    assert d.idempotent.table == (0, 0, 0)
    # the antichain-swap {0, 1} under a top element 2
    v = FinPoset([[1, 0, 1], [0, 1, 1], [0, 0, 1]])
    d = eventual_image_poset(monotone(v, [1, 0, 2]))
    assert sorted(d.iota.table) == [0, 1, 2]
    assert d.idempotent == FINPOSET.identity(v)


def test_bijection_that_is_not_an_order_isomorphism():
    # identity carrier from the discrete order onto a chain
    f = FINPOSET.make(FinPoset.discrete(2), FinPoset.chain(2), [0, 1])
    assert FINPOSET.is_injective(f) and FINPOSET.is_surjective(f)
    assert not FINPOSET.is_embedding(f)
    assert not FINPOSET.is_invertible(f)


@given(finset_tables(max_size=7))
def test_discrete_order_coincides_with_finset(table):
    f = monotone(FinPoset.discrete(len(table)), table)
    d = eventual_image_chain(Endo.of(FINPOSET, f))
    s = eventual_image_chain(Endo.of(FINSET, fin(table)))
    assert d.iota.table == s.iota.table
    assert d.idempotent.table == s.idempotent.table
    assert d.auto.table == s.auto.table


@given(finposet_endos)
def test_auto_is_an_order_isomorphism(e):
    d = eventual_image_poset(e.f)
    assert FINPOSET.is_invertible(d.auto)
    assert FINPOSET.is_embedding(d.iota)


@given(finposet_endos)
def test_forgetful_carriers_agree(e):
    d = eventual_image_chain(e)
    p = eventual_image_idempotent_power(e)
    s = eventual_image_chain(Endo.of(FINSET, fin(e.f.table)))
    assert d.iota.table == p.iota.table == s.iota.table
    assert d.idempotent.table == p.idempotent.table == s.idempotent.table


@given(seeds)
def test_random_monotone_maps_are_monotone(seed):
    rng = random.Random(seed)
    poset = random_poset(rng, rng.randint(0, 7))
    f = random_monotone(rng, poset)
    assert FINPOSET.map_error(poset, poset, f.table) is None
