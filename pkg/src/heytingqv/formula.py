"""Propositional syntax: formulas, rules, substitutions, parsing and printing.

Grammar (loosest to tightest)::

    formula := disj ('->' formula)?          right associative
    disj    := conj ('\\/' conj)*             left associative
    conj    := unary ('/\\' unary)*           left associative
    unary   := '~' unary | atom
    atom    := IDENT | 'bot' | 'top' | '(' formula ')'

``~A`` is sugar for ``A -> bot`` and ``top`` for ``bot -> bot``; neither has
its own node.  Unicode connectives (``¬ ∧ ∨ → ⊥ ⊤``) are accepted as well.
A rule is written ``A1, A2, ... / B`` (``/ B`` for an empty premise list).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping, Union


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Formula:
    """Base class of the syntax tree.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return format_formula(self)

    # convenience builders, handy in tests and interactive use
    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Imp(self, other)

    def __invert__(self) -> "Formula":
        return Imp(self, BOT)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


BOT = Bot()
TOP = Imp(BOT, BOT)


def Not(f: Formula) -> Formula:
    return Imp(f, BOT)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def conj(items: Iterable[Formula]) -> Formula:
    items = list(items)
    return reduce(And, items) if items else TOP


def disj(items: Iterable[Formula]) -> Formula:
    items = list(items)
    return reduce(Or, items) if items else BOT


def variables(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            out.add(g.name)
        elif isinstance(g, (And, Or, Imp)):
            stack.append(g.left)
            stack.append(g.right)
    return frozenset(out)


def size(f: Formula) -> int:
    if isinstance(f, (And, Or, Imp)):
        return 1 + size(f.left) + size(f.right)
    return 1


@dataclass(frozen=True)
class Rule:
    """A structural inference rule ``premises / conclusion``.

    Premises are deduplicated on construction, keeping first occurrences.
    """

    premises: tuple[Formula, ...]
    conclusion: Formula

    def __init__(self, premises: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "premises", tuple(dict.fromkeys(premises)))
        object.__setattr__(self, "conclusion", conclusion)

    def variables(self) -> frozenset[str]:
        vs = set(variables(self.conclusion))
        for p in self.premises:
            vs |= variables(p)
        return frozenset(vs)

    def __str__(self) -> str:
        return format_rule(self)


Substitution = Mapping[str, Formula]


def substitute(s: Substitution, f: Union[Formula, Rule]) -> Union[Formula, Rule]:
    """Simultaneously replace variables by formulas (in a formula or a rule)."""
    if isinstance(f, Rule):
        return Rule([substitute(s, p) for p in f.premises], substitute(s, f.conclusion))
    if isinstance(f, Var):
        return s.get(f.name, f)
    if isinstance(f, Bot):
        return f
    return type(f)(substitute(s, f.left), substitute(s, f.right))


def compose(s2: Substitution, s1: Substitution) -> dict[str, Formula]:
    """Substitution equal to applying ``s1`` first and then ``s2``."""
    out = {v: substitute(s2, g) for v, g in s1.items()}
    for v, g in s2.items():
        out.setdefault(v, g)
    return out


# ---------------------------------------------------------------- printing

_PREC = {Imp: 1, Or: 2, And: 3}
_ATOM = 4


def _prec(f: Formula) -> int:
    if isinstance(f, Imp) and f.right == BOT:
        return _ATOM  # rendered with prefix '~'
    return _PREC.get(type(f), _ATOM)


def format_formula(f: Formula) -> str:
    """Render with the minimal parenthesization that parses back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Bot):
        return "bot"
    if f == TOP:
        return "top"
    if isinstance(f, Imp) and f.right == BOT:
        inner = format_formula(f.left)
        return "~" + (inner if _prec(f.left) == _ATOM else f"({inner})")
    p = _PREC[type(f)]
    left, right = format_formula(f.left), format_formula(f.right)
    if isinstance(f, Imp):
        # right associative: the left operand needs parens at equal precedence
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
        return f"{left} -> {right}"
    op = "/\\" if isinstance(f, And) else "\\/"
    if _prec(f.left) < p:
        left = f"({left})"
    if _prec(f.right) <= p:
        right = f"({right})"
    return f"{left} {op} {right}"


def format_rule(r: Rule) -> str:
    prem = ", ".join(format_formula(p) for p in r.premises)
    return f"{prem} / {format_formula(r.conclusion)}" if prem else f"/ {format_formula(r.conclusion)}"


# ----------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<imp>->|→)|(?P<or>\\/|∨)|(?P<and>/\\|∧)|(?P<not>~|¬)"
    r"|(?P<lp>\()|(?P<rp>\))|(?P<comma>,)|(?P<slash>/)|(?P<bot>⊥)|(?P<top>⊤)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.lastgroup is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unknown token {text[start]!r}", start)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "ident" and value in ("bot", "top"):
            kind = value
        tokens.append((kind, value, m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = repr(tok[1]) if tok[0] != "eof" else "end of input"
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek() == "imp":
            self.i += 1
            return Imp(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "or":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "and":
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.peek() == "not":
            self.i += 1
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.tokens[self.i]
        if kind == "ident":
            self.i += 1
            return Var(value)
        if kind == "bot":
            self.i += 1
            return BOT
        if kind == "top":
            self.i += 1
            return TOP
        if kind == "lp":
            self.i += 1
            f = self.formula()
            self.take("rp")
            return f
        what = repr(value) if kind != "eof" else "end of input"
        raise ParseError(f"unexpected {what}", pos)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    return f


def parse_rule(text: str) -> Rule:
    p = _Parser(text)
    premises = []
    if p.peek() != "slash":
        premises.append(p.formula())
        while p.peek() == "comma":
            p.i += 1
            premises.append(p.formula())
    p.take("slash")
    conclusion = p.formula()
    p.take("eof")
    return Rule(premises, conclusion)


# ------------------------------------------------------------ rule families

def visser(n: int) -> Rule:
    if n < 1:
        raise ValueError(f"Visser rule needs n >= 1, got {n}")
    p = [Var(f"p{i}") for i in range(1, n + 3)]
    q = [Var(f"q{i}") for i in range(1, n + 1)]
    r = Var("r")
    hyp = conj(Imp(p[i], q[i]) for i in range(n))
    premise = Or(r, Imp(hyp, Or(p[n], p[n + 1])))
    conclusion = Or(r, disj(Imp(hyp, pj) for pj in p))
    return Rule([premise], conclusion)


def mints() -> Rule:
    p1, p2, q, r = Var("p1"), Var("p2"), Var("q"), Var("r")
    hyp = Imp(p1, q)
    return Rule([Or(r, Imp(hyp, Or(p1, p2)))], Or(Or(r, Imp(hyp, p1)), Imp(hyp, p2)))


def harrop() -> Rule:
    p, q, r = Var("p"), Var("q"), Var("r")
    return Rule([Imp(Not(p), Or(q, r))], Or(Imp(Not(p), q), Imp(Not(p), r)))


def modus_ponens() -> Rule:
    p, q = Var("p"), Var("q")
    return Rule([p, Imp(p, q)], q)


def rule_library(name: str, n: int | None = None) -> Rule:
    """Look up a named rule: ``visser`` (with ``n``), ``mints``, ``harrop``, ``modus_ponens``."""
    if name == "visser":
        if n is None:
            raise ValueError("visser needs n")
        return visser(n)
    table = {"mints": mints, "harrop": harrop, "modus_ponens": modus_ponens, "mp": modus_ponens}
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown rule {name!r}") from None
