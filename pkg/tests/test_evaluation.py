import itertools

import pytest
from hypothesis import given, settings, strategies as st

from heytingqv.algebra import chain
from heytingqv.catalog import catalog, cyclic
from heytingqv.evaluation import (RefutationWitness, evaluate, formula_valid, instance_check, rule_valid,
                                  separates, separates_rules)
from heytingqv.formula import Imp, Rule, Var, harrop, mints, parse, parse_rule, variables, visser

from conftest import formulas

LEM = parse("p \\/ ~p")
WLEM = parse("~p \\/ ~~p")
DUMMETT = parse("(p -> q) \\/ (q -> p)")


def test_evaluate_chain():
    c = chain(3)
    assert evaluate(c, parse("p -> q"), {"p": 2, "q": 1}) == 1
    assert evaluate(c, parse("~p"), {"p": 1}) == 0
    assert evaluate(c, parse("bot"), {}) == 0
    with pytest.raises(KeyError):
        evaluate(c, parse("p"), {})
    with pytest.raises(ValueError):
        evaluate(c, parse("p"), {"p": 7})


def test_classical_laws_in_small_algebras():
    assert formula_valid(chain(2), LEM) == "valid"
    assert formula_valid(chain(3), LEM) != "valid"
    assert formula_valid(chain(3), WLEM) == "valid"
    assert formula_valid(chain(5), DUMMETT) == "valid"
    assert formula_valid(catalog("C5p"), DUMMETT) != "valid"


def brute_least(a, f):
    vs = sorted(variables(f))
    for vals in itertools.product(range(a.n), repeat=len(vs)):
        v = dict(zip(vs, vals))
        if evaluate(a, f, v) != a.top:
            return v
    return None


@pytest.mark.parametrize("a", [chain(3), cyclic(5), cyclic(7)], ids=lambda a: a.name)
@pytest.mark.parametrize("f", [LEM, WLEM, DUMMETT, parse("(~~p -> p) -> p \\/ ~p")], ids=str)
def test_witness_is_lexicographically_least(a, f):
    res = formula_valid(a, f)
    least = brute_least(a, f)
    if least is None:
        assert res == "valid"
    else:
        assert isinstance(res, RefutationWitness) and res.valuation == least and res.verify()


@settings(max_examples=150, deadline=None)
@given(formulas(8))
def test_brute_force_and_interval_strategies_agree(f):
    """The interval reduction used for large implications must agree with brute force."""
    a = cyclic(6)
    full = formula_valid(a, f)
    if isinstance(f, Imp):
        small = formula_valid(a, f, strategy="interval")
        assert (small == "valid") == (full == "valid")
        if small != "valid":
            assert small.verify()
    if full != "valid":
        assert full.verify()


def test_large_implication_needs_interval_route():
    with pytest.raises(Exception):
        formula_valid(cyclic(6), parse("p \\/ ~p \\/ q"), budget=1)


def test_rule_validity():
    mp = parse_rule("p, p -> q / q")
    assert rule_valid(cyclic(7), mp) == "valid"
    res = rule_valid(chain(3), parse_rule("~~p / p"))
    assert res != "valid" and res.verify()
    assert res.premise_values == [2]


def test_rule_backtracking_agrees_with_brute():
    r = parse_rule("~p -> q \\/ r / (~p -> q) \\/ (~p -> r)")
    for a in (chain(3), cyclic(5), cyclic(6)):
        assert (rule_valid(a, r) == "valid") == (rule_valid(a, r, budget=10**9 + 1) == "valid")


def test_harrop_and_visser():
    assert rule_valid(chain(2), harrop()) == "valid"
    for n in range(2, 8):
        assert rule_valid(chain(n), visser(1)) == "valid"


def test_separation():
    assert separates(chain(3), [WLEM], LEM)
    assert not separates(chain(2), [], LEM)
    assert separates_rules(chain(3), [parse_rule("p, p -> q / q")], parse_rule("~~p / p"))


def test_mints_counterexample_in_c7():
    s = {"p1": parse("~~q"), "p2": parse("~q"), "r": parse("~~q -> q")}
    chk = instance_check(cyclic(7), mints(), s)
    assert chk.counterexample
    assert chk.premise_results == ["valid"]
    assert chk.conclusion_result.verify()


def test_mints_instance_inconclusive_in_c2():
    s = {"p1": parse("~~q"), "p2": parse("~q"), "r": parse("~~q -> q")}
    assert instance_check(cyclic(2), mints(), s).verdict == "inconclusive"


def test_witness_serialization():
    res = formula_valid(chain(3), LEM)
    d = res.to_dict()
    assert set(d) == {"valuation", "value"}
