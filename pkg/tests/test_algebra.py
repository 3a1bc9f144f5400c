import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heytingqv.algebra import (HeytingAlgebra, Poset, chain, min_generators, product, rn_ladder, trivial,
                               upset_algebra, validate_algebra)
from heytingqv.catalog import cyclic, cyclic_candidates

from conftest import posets


def test_chain_tables():
    c = chain(3)
    assert c.imp.tolist() == [[2, 2, 2], [0, 2, 2], [0, 1, 2]]
    assert c.neg(1) == 0 and c.neg(0) == 2
    assert validate_algebra(c)


def test_trivial():
    t = trivial()
    assert t.n == 1 and not t.nontrivial
    assert validate_algebra(t).ok and not validate_algebra(t).nontrivial


def test_poset_rejects_cycles():
    with pytest.raises(ValueError):
        Poset.from_covers(["a", "b"], [("a", "b"), ("b", "a")])


def test_upset_algebra_of_antichain_is_boolean():
    p = Poset.from_covers(["x", "y"], [])
    a = upset_algebra(p)
    assert a.n == 4
    # Boolean: x \/ ~x = top
    assert all(a.join[x, a.neg(x)] == a.top for x in range(a.n))


def test_upset_algebra_of_diamond():
    p = Poset.from_covers(["b", "l", "r", "t"], [("b", "l"), ("b", "r"), ("l", "t"), ("r", "t")])
    assert upset_algebra(p).n == 6


def test_product_and_projections():
    a, proj = product([chain(2), chain(3)])
    assert a.n == 6
    assert validate_algebra(a)
    assert sorted(set(proj[1].tolist())) == [0, 1, 2]


def test_interval_is_quotient_algebra():
    a = chain(4)
    sub, members = a.interval(2)
    assert sub.n == 3 and members.tolist() == [0, 1, 2]
    assert validate_algebra(sub)


def test_min_generators():
    assert min_generators(chain(2), 1) == 0
    assert min_generators(chain(3), 1) == 1
    assert min_generators(chain(4), 1) is None  # a 4-chain needs two generators
    assert min_generators(chain(4), 2) == 2


def test_validate_reports_witness():
    c = chain(3)
    imp = c.imp.copy()
    imp[1, 0] = 2
    bad = HeytingAlgebra(c.meet, c.join, imp, 0, 2)
    rep = validate_algebra(bad)
    assert not rep and rep.failures[0][0] == "residuation"


def test_ladder_levels():
    p = rn_ladder(3)
    assert p.n == 6
    assert p.maximal() == [0, 1]


def test_cyclic_small_sizes():
    assert cyclic(2).n == 2
    for n in range(2, 12):
        c = cyclic(n)
        assert c.n == n
        assert min_generators(c, 1) == 1 or n == 2
        assert validate_algebra(c)


def test_cyclic_unique_up_to_isomorphism():
    for n in range(2, 13):
        assert len(cyclic_candidates(n)) == 1


def test_cyclic_rejects_tiny():
    with pytest.raises(ValueError):
        cyclic(1)


@settings(max_examples=200, deadline=None)
@given(posets(8), st.data())
def test_upset_algebras_valid_and_mutations_caught(p, data):
    a = upset_algebra(p)
    assert validate_algebra(a)
    i = data.draw(st.integers(0, a.n - 1))
    j = data.draw(st.integers(0, a.n - 1))
    v = data.draw(st.integers(0, a.n - 1).filter(lambda v: v != a.imp[i, j]))
    imp = a.imp.copy()
    imp[i, j] = v
    assert not validate_algebra(HeytingAlgebra(a.meet, a.join, imp, a.bot, a.top))
