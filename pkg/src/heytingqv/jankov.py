"""Jankov characteristic formulas and the SH-membership oracle.

For a finite subdirectly irreducible ``A`` with second greatest element
``w``, the formula ``X(A) = diagram(A) -> p_w`` is refuted in ``B`` exactly
when ``A`` embeds into a quotient of ``B``.  Here that equivalence is not
assumed; ``in_sh`` decides the right-hand side directly so the two can be
compared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import HeytingAlgebra
from .formula import BOT, Formula, Iff, Imp, Var, conj
from .morphisms import find_hom
from .quasivariety import NO, YES, Verdict


def second_greatest(a: HeytingAlgebra) -> int | None:
    """The unique coatom of ``a`` if there is exactly one, else ``None``."""
    if not a.nontrivial:
        raise ValueError("second_greatest needs a nontrivial algebra")
    co = a.coatoms()
    return co[0] if len(co) == 1 else None


@dataclass(frozen=True)
class JankovFormula:
    algebra: HeytingAlgebra
    variables: tuple[str, ...]
    formula: Formula

    def __str__(self) -> str:
        return str(self.formula)


def _var_names(a: HeytingAlgebra) -> list[str]:
    width = len(str(a.n - 1))
    return [f"p{x:0{width}d}" for x in range(a.n)]


def jankov_formula(a: HeytingAlgebra) -> JankovFormula:
    """``X(a)``: the diagram of ``a`` in one variable per element, implying ``p_w``."""
    w = second_greatest(a)
    if w is None:
        raise ValueError("jankov_formula needs a subdirectly irreducible algebra")
    names = _var_names(a)
    p = [Var(s) for s in names]
    parts = [Iff(p[a.bot], BOT)]
    for x in range(a.n):
        for y in range(a.n):
            # meet and join are commutative, so one order of each pair suffices
            if x <= y:
                parts.append(Iff(p[int(a.meet[x, y])], p[x] & p[y]))
                parts.append(Iff(p[int(a.join[x, y])], p[x] | p[y]))
            parts.append(Iff(p[int(a.imp[x, y])], Imp(p[x], p[y])))
    return JankovFormula(a, tuple(names), Imp(conj(parts), p[w]))


def identity_valuation(jf: JankovFormula) -> dict[str, int]:
    return {name: x for x, name in enumerate(jf.variables)}


def in_sh(a: HeytingAlgebra, b: HeytingAlgebra) -> Verdict:
    """Does ``a`` embed into some quotient of ``b``?  Sweeps every filter of ``b``."""
    for d in sorted(range(b.n), key=lambda x: (int(b.downset_sizes[x]), x)):
        if b.downset_sizes[d] < a.n:
            continue
        quot, members = b.interval(d)
        emb = find_hom(a, quot, "injective")
        if emb is not None:
            return Verdict(YES, {"filter_generator": d, "quotient": quot, "embedding": emb})
    return Verdict(NO, {"filters_checked": b.n})


__all__ = ["second_greatest", "JankovFormula", "jankov_formula", "identity_valuation", "in_sh"]
