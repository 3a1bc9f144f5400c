"""The Mints rule is not admissible in the logic of the 7-element cyclic algebra.

Run:  python demos/mints_rule_in_c7.py
"""

from heytingqv.catalog import cyclic
from heytingqv.evaluation import formula_valid, instance_check
from heytingqv.formula import mints, parse
from heytingqv.repro import MINTS_SUBSTITUTION

c7 = cyclic(7)
rule = mints()
print("rule:        ", rule)
chk = instance_check(c7, rule, MINTS_SUBSTITUTION)
print("instance:    ", chk.instance)
print("premise:     ", chk.premise_results[0])
w = chk.conclusion_result
print("conclusion:   refuted by", w.to_dict()["valuation"], "with value", w.to_dict()["value"])
print("verdict:     ", chk.verdict)

g = formula_valid(c7, parse("(~~q -> q) \\/ ~~q \\/ ~q"))
print("\nshorter form (~~q -> q) \\/ ~~q \\/ ~q:", "valid" if g == "valid" else f"refuted by {g.to_dict()['valuation']}")
