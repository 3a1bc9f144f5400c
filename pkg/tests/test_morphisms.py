import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heytingqv.algebra import chain, product, upset_algebra
from heytingqv.catalog import cyclic
from heytingqv.morphisms import (Filter, embeds, filters, find_hom, find_homs, isomorphic, principal_filter,
                                 quotient, subalgebras, subdirect_embedding_check, surjects)

from conftest import posets


def brute_homs(a, b):
    """Every map a -> b preserving bot, top, meet, join and imp, by plain loops."""
    out = []
    for img in itertools.product(range(b.n), repeat=a.n):
        if img[a.bot] != b.bot or img[a.top] != b.top:
            continue
        ok = all(img[a.meet[x, y]] == b.meet[img[x], img[y]] and img[a.join[x, y]] == b.join[img[x], img[y]]
                 and img[a.imp[x, y]] == b.imp[img[x], img[y]] for x in range(a.n) for y in range(a.n))
        if ok:
            out.append(list(img))
    return sorted(out)


SMALL = [chain(2), chain(3), chain(4), cyclic(4), cyclic(5), cyclic(6)]


@pytest.mark.parametrize("a", SMALL, ids=lambda a: a.name)
@pytest.mark.parametrize("b", SMALL[:5], ids=lambda a: a.name)
def test_find_homs_matches_brute_force(a, b):
    maps, truncated = find_homs(a, b)
    assert not truncated
    assert sorted(h.tolist() for h in maps) == brute_homs(a, b)
    assert all(h.verify() for h in maps)


def test_modes():
    c3, c4 = chain(3), chain(4)
    assert embeds(c3, c4) and not embeds(c4, c3)
    assert surjects(c4, c3) and not surjects(c3, c4)
    assert isomorphic(cyclic(6), cyclic(6))
    assert not isomorphic(chain(6), cyclic(6))
    with pytest.raises(ValueError):
        find_homs(c3, c4, "sideways")


def test_homomorphism_properties():
    h = find_hom(chain(4), chain(2), "surjective")
    assert h.surjective and not h.injective
    assert h(0) == 0 and h(3) == 1


def test_filters_are_principal_and_verify():
    a = cyclic(6)
    fs = filters(a)
    assert len(fs) == a.n
    assert all(f.verify() for f in fs)
    assert {f.generator for f in fs} == set(range(a.n))


def test_quotient_canonical_map():
    a = chain(4)
    q, canon = quotient(a, 1)
    assert q.n == 2
    assert canon.verify() and canon.surjective
    assert canon.kernel().members == principal_filter(a, 1).members


def test_subalgebras_of_chain():
    # subalgebras of a 4-chain: any subset containing bot and top
    subs = subalgebras(chain(4))
    assert sorted(s.n for s, _ in subs) == [2, 3, 4]
    assert all(incl.verify() and incl.injective for _, incl in subs)


def test_subdirect_product_of_chains():
    a, _ = product([chain(2), chain(3)])
    got = subdirect_embedding_check(a, [chain(2), chain(3)])
    assert got is not None
    prod, emb = got
    assert emb.verify() and emb.injective
    assert subdirect_embedding_check(chain(3), [chain(2), chain(2)]) is None


@settings(max_examples=40, deadline=None)
@given(posets(6))
def test_kernel_factorization(p):
    """Every surjection factors through the quotient by its kernel, the factor being an isomorphism."""
    a = upset_algebra(p)
    for b in (chain(2), chain(3)):
        for h in find_homs(a, b, "surjective")[0]:
            k = h.kernel()
            assert k.verify()
            q, canon = quotient(a, k)
            assert isomorphic(q, b)
            # h(x) depends only on the class of x
            cls = {}
            for x in range(a.n):
                assert cls.setdefault(canon(x), h(x)) == h(x)
