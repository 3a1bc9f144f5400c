"""Finite Heyting algebras, structural inference rules and quasivariety predicates.

The main entry points are re-exported here; see the submodules for the rest:
``formula`` (syntax), ``algebra`` (tables and constructions), ``catalog``
(chains, cyclic algebras, figure algebras), ``morphisms``, ``evaluation``,
``quasivariety``, ``jankov``, ``repro`` and ``cli``.
"""

from .algebra import (BudgetExceeded, HeytingAlgebra, Poset, chain, min_generators, product, rn_ladder_prefix,
                      trivial, upset_algebra, validate_algebra)
from .catalog import CATALOG_NAMES, catalog, catalog_frame, cyclic, standard_algebra
from .config import Budgets
from .evaluation import RefutationWitness, evaluate, formula_valid, instance_check, rule_valid, separates
from .formula import Formula, Rule, Var, format_formula, harrop, mints, parse, parse_rule, substitute, visser
from .io import export_dot
from .jankov import in_sh, jankov_formula, second_greatest
from .morphisms import Filter, Homomorphism, embeds, filters, find_hom, find_homs, isomorphic, quotient, subalgebras
from .quasivariety import (QvarHandle, Verdict, free_algebra, irreducibles, member, primitive, q_irreducible,
                           sc_primitive_cyclic, totally_non_projective, weakly_projective)
from .repro import run_repro

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "HeytingAlgebra", "Poset", "chain", "min_generators", "product", "rn_ladder_prefix", "trivial",
    "upset_algebra", "validate_algebra", "CATALOG_NAMES", "catalog", "catalog_frame", "cyclic", "standard_algebra",
    "Budgets", "RefutationWitness", "evaluate", "formula_valid", "instance_check", "rule_valid", "separates",
    "Formula", "Rule", "Var", "format_formula", "harrop", "mints", "parse", "parse_rule", "substitute", "visser",
    "export_dot", "in_sh", "jankov_formula", "second_greatest", "Filter", "Homomorphism", "embeds", "filters",
    "find_hom", "find_homs", "isomorphic", "quotient", "subalgebras", "QvarHandle", "Verdict", "free_algebra",
    "irreducibles", "member", "primitive", "q_irreducible", "sc_primitive_cyclic", "totally_non_projective",
    "weakly_projective", "run_repro",
]
