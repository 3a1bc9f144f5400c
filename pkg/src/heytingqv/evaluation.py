"""Valuations, validity and refutation of formulas and rules in a finite algebra.

Valuations are enumerated lexicographically: variables sorted by name, the
first variable most significant, element indices ascending.  Small searches
are brute force over that order (vectorized), so the witness returned is
the least refuting valuation.  Larger ones use:

* backtracking for rules, pruning as soon as a premise conjunct whose
  variables are all assigned misses top;
* for implications ``D -> P``, the interval trick: ``D -> P`` is refuted in
  ``B`` iff the rule ``D / P`` is refuted in some ``[bot, d]``, and a
  witness there lifts to ``B`` unchanged (``x -> x /\\ d`` is a
  homomorphism onto the interval).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .algebra import BudgetExceeded, HeytingAlgebra
from .formula import And, Bot, Formula, Imp, Or, Rule, Substitution, Var, substitute, variables

DEFAULT_BUDGET = 10**8
Valuation = Mapping[str, int]


@dataclass
class RefutationWitness:
    """A valuation refuting a formula (``premise_values`` empty) or a rule."""

    algebra: HeytingAlgebra
    target: Formula | Rule
    valuation: dict[str, int]
    value: int
    premise_values: list[int] = field(default_factory=list)

    def verify(self) -> bool:
        a = self.algebra
        if isinstance(self.target, Rule):
            prem = [evaluate(a, p, self.valuation) for p in self.target.premises]
            concl = evaluate(a, self.target.conclusion, self.valuation)
            return prem == self.premise_values and all(v == a.top for v in prem) and concl == self.value != a.top
        return evaluate(a, self.target, self.valuation) == self.value != a.top

    def to_dict(self) -> dict:
        a = self.algebra
        out = {"valuation": {k: a.label(v) for k, v in self.valuation.items()}, "value": a.label(self.value)}
        if isinstance(self.target, Rule):
            out["premise_values"] = [a.label(v) for v in self.premise_values]
        return out


def is_valid(result) -> bool:
    return result == "valid"


# ------------------------------------------------------------ evaluation

def evaluate(a: HeytingAlgebra, f: Formula, v: Valuation) -> int:
    """Value of ``f`` under ``v``; connectives go to meet, join and imp, bot to bot."""
    if isinstance(f, Var):
        try:
            x = v[f.name]
        except KeyError:
            raise KeyError(f"valuation has no value for {f.name!r}") from None
        if not 0 <= x < a.n:
            raise ValueError(f"value {x} for {f.name!r} is not an element")
        return int(x)
    if isinstance(f, Bot):
        return a.bot
    left, right = evaluate(a, f.left, v), evaluate(a, f.right, v)
    table = a.meet if isinstance(f, And) else a.join if isinstance(f, Or) else a.imp
    return int(table[left, right])


def _evaluate_vec(a: HeytingAlgebra, f: Formula, env: dict[str, np.ndarray], memo: dict) -> np.ndarray:
    hit = memo.get(f)
    if hit is not None:
        return hit
    if isinstance(f, Var):
        out = env[f.name]
    elif isinstance(f, Bot):
        out = np.int32(a.bot)
    else:
        table = a.meet if isinstance(f, And) else a.join if isinstance(f, Or) else a.imp
        out = table[_evaluate_vec(a, f.left, env, memo), _evaluate_vec(a, f.right, env, memo)]
    memo[f] = out
    return out


def _dag_size(f: Formula) -> int:
    seen = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        if isinstance(g, (And, Or, Imp)):
            stack.extend((g.left, g.right))
    return len(seen)


def _decode(idx: np.ndarray, n: int, k: int) -> list[np.ndarray]:
    digits = []
    for _ in range(k):
        digits.append(idx % n)
        idx = idx // n
    return digits[::-1]


def _brute(a: HeytingAlgebra, vs: list[str], check, chunk: int = 1 << 18):
    """First valuation index (lexicographic) where ``check(env)`` is False, or None."""
    total = a.n ** len(vs)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        env = dict(zip(vs, _decode(idx, a.n, len(vs))))
        ok = check(env, len(idx))
        bad = np.flatnonzero(~ok)
        if len(bad):
            return [int(d[0]) for d in _decode(idx[bad[:1]], a.n, len(vs))]
    return None


def _conjuncts(f: Formula) -> list[Formula]:
    out, stack = [], [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack.extend((g.right, g.left))
        else:
            out.append(g)
    return out


# ----------------------------------------------------------- refutation

def _refute_rule_backtrack(a: HeytingAlgebra, premises: list[Formula], conclusion: Formula, vs: list[str],
                           budget: int):
    """Least valuation with every premise at top and the conclusion below top."""
    pos = {x: i for i, x in enumerate(vs)}
    parts = []
    for p in premises:
        parts.extend(_conjuncts(p))
    # check each conjunct once its last variable is assigned
    due: list[list[Formula]] = [[] for _ in vs]
    ground = []
    for c in dict.fromkeys(parts):
        cv = variables(c)
        if cv:
            due[max(pos[x] for x in cv)].append(c)
        else:
            ground.append(c)
    if any(evaluate(a, c, {}) != a.top for c in ground):
        return None
    if not vs:
        val = evaluate(a, conclusion, {})
        return {} if val != a.top else None
    assignment: dict[str, int] = {}
    steps = 0
    top = a.top

    def rec(i: int):
        nonlocal steps
        name = vs[i]
        for x in range(a.n):
            steps += 1 + len(due[i])
            if steps > budget:
                raise BudgetExceeded(f"rule refutation search exceeds {budget} steps")
            assignment[name] = x
            if all(evaluate(a, c, assignment) == top for c in due[i]):
                if i + 1 == len(vs):
                    if evaluate(a, conclusion, assignment) != top:
                        return dict(assignment)
                else:
                    got = rec(i + 1)
                    if got is not None:
                        return got
        del assignment[name]
        return None

    return rec(0)


def rule_valid(a: HeytingAlgebra, r: Rule, budget: int = DEFAULT_BUDGET):
    """``"valid"`` or the least valuation refuting ``r`` (premises at top, conclusion not)."""
    vs = sorted(r.variables())
    cost = a.n ** len(vs) * max(1, sum(_dag_size(p) for p in r.premises) + _dag_size(r.conclusion))
    if cost <= min(budget, 10**7):
        def check(env, m):
            memo: dict = {}
            ok = np.ones(m, dtype=bool)
            for p in r.premises:
                ok &= np.broadcast_to(_evaluate_vec(a, p, env, memo) == a.top, (m,))
            return ~(ok & np.broadcast_to(_evaluate_vec(a, r.conclusion, env, memo) != a.top, (m,)))
        hit = _brute(a, vs, check)
        val = None if hit is None else dict(zip(vs, hit))
    else:
        val = _refute_rule_backtrack(a, list(r.premises), r.conclusion, vs, budget)
    if val is None:
        return "valid"
    return RefutationWitness(a, r, val, evaluate(a, r.conclusion, val), [evaluate(a, p, val) for p in r.premises])


def formula_valid(a: HeytingAlgebra, f: Formula, budget: int = DEFAULT_BUDGET, strategy: str = "auto"):
    """``"valid"`` or a refuting valuation.

    Brute force (least valuation in lexicographic order) when
    ``|a|^vars * size`` fits the budget; otherwise implications are decided
    through the interval trick and other formulas raise ``BudgetExceeded``.
    ``strategy`` ("brute" or "interval") forces one route.
    """
    if strategy not in ("auto", "brute", "interval"):
        raise ValueError(f"unknown strategy {strategy!r}")
    vs = sorted(variables(f))
    cost = a.n ** len(vs) * _dag_size(f)
    if strategy == "brute" or (strategy == "auto" and cost <= budget):
        def check(env, m):
            return np.broadcast_to(_evaluate_vec(a, f, env, {}) == a.top, (m,))
        hit = _brute(a, vs, check)
        if hit is None:
            return "valid"
        val = dict(zip(vs, hit))
        return RefutationWitness(a, f, val, evaluate(a, f, val))
    if not isinstance(f, Imp):
        if strategy == "interval":
            raise ValueError("the interval route applies to implications only")
        raise BudgetExceeded(f"{a.n}^{len(vs)} valuations exceed the budget of {budget} steps")
    for d in range(a.n):
        if d == a.bot:
            continue
        sub, members = a.interval(d)
        val = _refute_rule_backtrack(sub, [f.left], f.right, vs, budget)
        if val is not None:
            val = {x: int(members[y]) for x, y in val.items()}
            return RefutationWitness(a, f, val, evaluate(a, f, val))
    return "valid"


def separates(a: HeytingAlgebra, gamma: Iterable[Formula], f: Formula, budget: int = DEFAULT_BUDGET) -> bool:
    """Every member of ``gamma`` is valid in ``a`` and ``f`` is refuted."""
    if formula_valid(a, f, budget) == "valid":
        return False
    return all(formula_valid(a, g, budget) == "valid" for g in gamma)


def separates_rules(a: HeytingAlgebra, rules: Iterable[Rule], r: Rule, budget: int = DEFAULT_BUDGET) -> bool:
    """Every rule of ``rules`` is valid in ``a`` and ``r`` is refuted."""
    if rule_valid(a, r, budget) == "valid":
        return False
    return all(rule_valid(a, s, budget) == "valid" for s in rules)


# ------------------------------------------------------- admissibility

@dataclass
class InstanceCheck:
    """Outcome of testing one substitution instance of a rule in an algebra."""

    verdict: str  # "counterexample" or "inconclusive"
    instance: Rule
    premise_results: list
    conclusion_result: object

    @property
    def counterexample(self) -> bool:
        return self.verdict == "counterexample"


def instance_check(a: HeytingAlgebra, r: Rule, s: Substitution, budget: int = DEFAULT_BUDGET) -> InstanceCheck:
    """Does ``s`` turn ``r`` into valid premises and a refuted conclusion in ``a``?

    A counterexample shows the rule is not admissible in the logic of ``a``;
    anything else is inconclusive, since one instance cannot show admissibility.
    """
    inst = substitute(s, r)
    prem = [formula_valid(a, p, budget) for p in inst.premises]
    concl = formula_valid(a, inst.conclusion, budget)
    hit = all(x == "valid" for x in prem) and concl != "valid"
    return InstanceCheck("counterexample" if hit else "inconclusive", inst, prem, concl)


__all__ = ["RefutationWitness", "InstanceCheck", "evaluate", "formula_valid", "rule_valid", "separates",
           "separates_rules", "instance_check", "is_valid", "DEFAULT_BUDGET"]
