import pytest
from hypothesis import given, settings

from heytingqv.formula import (BOT, TOP, And, Imp, Not, Or, ParseError, Rule, Var, compose, format_formula,
                               format_rule, harrop, mints, parse, parse_rule, rule_library, size, substitute,
                               variables, visser)

from conftest import formulas

p, q, r = Var("p"), Var("q"), Var("r")


@pytest.mark.parametrize("text, tree", [
    ("p", p),
    ("p -> q -> r", Imp(p, Imp(q, r))),
    ("p \\/ q /\\ r", Or(p, And(q, r))),
    ("~p", Imp(p, BOT)),
    ("~~p", Imp(Imp(p, BOT), BOT)),
    ("top", Imp(BOT, BOT)),
    ("(p -> q) -> r", Imp(Imp(p, q), r)),
    ("p ∧ q → ⊥", Imp(And(p, q), BOT)),
    ("p \\/ q \\/ r", Or(Or(p, q), r)),
])
def test_parse_known(text, tree):
    assert parse(text) == tree


@pytest.mark.parametrize("bad", ["", "p ->", "(p", "p q", "p $ q", "->p"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse("p /\\ $")
    assert exc.value.pos == 5


def test_printing_is_minimal():
    assert format_formula(Imp(Imp(p, q), r)) == "(p -> q) -> r"
    assert format_formula(Imp(p, Imp(q, r))) == "p -> q -> r"
    assert format_formula(Not(p)) == "~p"
    assert format_formula(TOP) == "top"


def test_variables_and_size():
    f = parse("(p -> q) \\/ ~r")
    assert variables(f) == {"p", "q", "r"}
    assert size(f) == 7


def test_substitution_is_simultaneous():
    f = parse("p -> q")
    assert substitute({"p": q, "q": p}, f) == Imp(q, p)


def test_compose():
    s1 = {"p": Imp(q, BOT)}
    s2 = {"q": r}
    f = parse("p \\/ q")
    assert substitute(compose(s2, s1), f) == substitute(s2, substitute(s1, f))


def test_rule_parsing_and_printing():
    rule = parse_rule("p, p -> q / q")
    assert rule == Rule([p, Imp(p, q)], q)
    assert parse_rule(format_rule(rule)) == rule
    assert parse_rule("/ p \\/ ~p").premises == ()


def test_rule_premises_deduplicated():
    assert Rule([p, p, q], r).premises == (p, q)


def test_visser_shape():
    v1 = visser(1)
    assert variables(v1.conclusion) == {"p1", "p2", "p3", "q1", "r"}
    assert len(v1.premises) == 1
    with pytest.raises(ValueError):
        visser(0)


def test_mints_instance_matches_the_printed_conclusion():
    s = {"p1": parse("~~q"), "p2": parse("~q"), "r": parse("~~q -> q")}
    inst = substitute(s, mints())
    assert inst.conclusion == parse("(~~q -> q) \\/ ((~~q -> q) -> ~~q) \\/ ((~~q -> q) -> ~q)")


def test_rule_library():
    assert rule_library("harrop") == harrop()
    assert rule_library("visser", 2) == visser(2)
    with pytest.raises(ValueError):
        rule_library("nope")


@settings(max_examples=1000, deadline=None)
@given(formulas())
def test_round_trip(f):
    assert parse(format_formula(f)) == f
