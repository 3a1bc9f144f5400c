"""Scripted reproduction of the finite computations, as a machine-readable report.

Each check names a claim, the verdict expected for it, and a computation
(``kind``) that produces a verdict.  A row is green when the two agree, red
when they differ, and ``exceeds-budget`` when a search ran out of budget,
which is not a failure.  Expectations live in ``data/repro_expected.json``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable

from .algebra import BudgetExceeded, HeytingAlgebra, chain
from .catalog import CATALOG_NAMES, catalog, cyclic, standard_algebra
from .config import Budgets
from .evaluation import formula_valid, instance_check
from .formula import Var, mints, parse
from .jankov import in_sh, jankov_formula, second_greatest
from .morphisms import find_hom, isomorphic, subdirect_embedding_check
from .quasivariety import EXCEEDS, free_algebra, member, primitive, q_irreducible, sc_primitive_cyclic
from .quasivariety import totally_non_projective, weakly_projective

SUITES = ("fig1", "th_rnpr", "th_noleast", "jankov")
GREEN, RED = "green", "red"

# the substitution of the Mints-rule counterexample
_Q = Var("q")
MINTS_SUBSTITUTION = {"p1": ~~_Q, "p2": ~_Q, "r": ~~_Q >> _Q}


@dataclass
class CheckResult:
    name: str
    anchor: str
    expected: str
    computed: str
    certificate: str
    seconds: float

    @property
    def status(self) -> str:
        if self.computed == EXCEEDS:
            return EXCEEDS
        return GREEN if self.computed == self.expected else RED

    def to_dict(self, times: bool = True) -> dict:
        d = {"name": self.name, "anchor": self.anchor, "expected": self.expected, "computed": self.computed,
             "status": self.status, "certificate": self.certificate}
        if times:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class ReproReport:
    suite: str
    budgets: Budgets
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def red(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == RED]

    @property
    def ok(self) -> bool:
        return not self.red

    def counts(self) -> dict[str, int]:
        out = {GREEN: 0, RED: 0, EXCEEDS: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def to_dict(self, times: bool = True) -> dict:
        return {"suite": self.suite, "budgets": self.budgets.qvar_kwargs() | {"eval_budget": self.budgets.eval_budget},
                "counts": self.counts(), "checks": [c.to_dict(times) for c in self.checks]}

    def to_json(self, times: bool = True) -> str:
        return json.dumps(self.to_dict(times), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = [f"{c.status:>14}  {c.name:<{width}}  expected {c.expected}, got {c.computed}  ({c.certificate})"
                 for c in self.checks]
        n = self.counts()
        lines.append(f"{n[GREEN]} green, {n[RED]} red, {n[EXCEEDS]} exceeds-budget")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def expected_checks() -> tuple[dict, ...]:
    text = resources.files("heytingqv").joinpath("data/repro_expected.json").read_text()
    return tuple(json.loads(text)["checks"])


def _alg(addr: str) -> HeytingAlgebra:
    return standard_algebra(addr)


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _name_of(a: HeytingAlgebra) -> str:
    for name in CATALOG_NAMES:
        c = catalog(name)
        if c.n == a.n and isomorphic(a, c):
            return name
    return f"<{a.n} elements>"


# ------------------------------------------------------------ computations
# each returns (verdict, certificate summary)

def _embeds(b: Budgets, x, y):
    h = find_hom(_alg(x), _alg(y), "injective")
    return _yn(h is not None), f"embedding {h.tolist()}" if h is not None else "no injective homomorphism"


def _surjects(b: Budgets, x, y):
    h = find_hom(_alg(x), _alg(y), "surjective")
    return _yn(h is not None), f"surjection {h.tolist()}" if h is not None else "no surjective homomorphism"


def _subdirect(b: Budgets, x, *factors):
    got = subdirect_embedding_check(_alg(x), [_alg(f) for f in factors])
    return _yn(got is not None), "subdirect embedding found" if got is not None else "no subdirect embedding"


def _si(b: Budgets, x):
    w = second_greatest(_alg(x))
    return _yn(w is not None), f"second greatest element {w}" if w is not None else "several coatoms"


def _member(b: Budgets, x, y):
    v = member(_alg(x), b.handle(_alg(y), check=False))
    if v:
        return v.verdict, f"{len(v.certificate['separating'])} separating homomorphisms"
    return v.verdict, f"coatom pair {v.certificate['pair']} not separated"


def _q_irreducible(b: Budgets, x, y):
    v = q_irreducible(_alg(x), b.handle(_alg(y), check=False))
    return v.verdict, "kernel meet below top" if v else "separated by proper Q-congruences"


def _wp_summary(v) -> str:
    c = v.certificate
    if "preimage" in c:
        return f"preimage {_name_of(c['preimage'])} ({c.get('source')})"
    if "section" in c:
        return f"section of the free algebra ({c.get('source')})"
    return "; ".join(map(str, c.get("partial", [c.get("reason", "")])))


def _weakly_projective(b: Budgets, x, y):
    v = weakly_projective(_alg(x), b.handle(_alg(y), check=False))
    return v.verdict, _wp_summary(v)


def _tnp(b: Budgets, x):
    v = totally_non_projective(_alg(x), b.handle(_alg(x), check=False))
    return v.verdict, _wp_summary(v)


def _bad_preimage(b: Budgets, x, y):
    src, dst = _alg(x), _alg(y)
    onto = find_hom(src, dst, "surjective") is not None
    into = find_hom(dst, src, "injective") is not None
    ok = onto and not into
    why = "maps onto" if onto else "does not map onto"
    return _yn(ok), f"{x} {why} {y}; {y} {'embeds' if into else 'does not embed'} into {x}"


def _primitive(b: Budgets, x, certificate=None):
    v = primitive(b.handle(_alg(x), check=False))
    c = v.certificate
    if v.verdict == "no":
        found = _name_of(c["irreducible"])
        summary = f"irreducible {found} not weakly projective ({_wp_summary(c['failures'][0][1])})"
        if certificate is not None and not isomorphic(c["irreducible"], _alg(certificate)):
            return "no, other certificate", summary
        return "no", summary
    if v.verdict == EXCEEDS:
        return EXCEEDS, f"{len(c['undecided'])} irreducibles undecided"
    return "yes", f"{len(c['irreducibles'])} irreducibles, all weakly projective"


def _sc_primitive(b: Budgets, x):
    v = sc_primitive_cyclic(_alg(x), b.handle(_alg(x), check=False))
    f = v.certificate.get("free_algebra")
    return v.verdict, f"one-generated free algebra has {f.n} elements" if f is not None else v.certificate.get("reason", "")


def _free_size(b: Budgets, x, k):
    try:
        f = free_algebra(b.handle(_alg(x), check=False), int(k))
    except BudgetExceeded as exc:
        return EXCEEDS, str(exc)
    return str(f.n), f"closure of {k} projection tuples"


def _validity(res) -> str:
    return "valid" if res == "valid" else "refuted"


def _formula(b: Budgets, x, text):
    res = formula_valid(_alg(x), parse(text), b.eval_budget)
    cert = "valid" if res == "valid" else f"valuation {res.to_dict()['valuation']}"
    return _validity(res), cert


def _instance_premises(b: Budgets, x):
    chk = instance_check(_alg(x), mints(), MINTS_SUBSTITUTION, b.eval_budget)
    ok = all(r == "valid" for r in chk.premise_results)
    return ("valid" if ok else "refuted"), f"premise {chk.instance.premises[0]}"


def _instance_check(b: Budgets, x):
    chk = instance_check(_alg(x), mints(), MINTS_SUBSTITUTION, b.eval_budget)
    return chk.verdict, f"conclusion {chk.instance.conclusion}"


def _glivenko_agreement(b: Budgets, x):
    a = _alg(x)
    one = formula_valid(a, parse("(~~q -> q) \\/ ((~~q -> q) -> ~~q) \\/ ((~~q -> q) -> ~q)"), b.eval_budget)
    two = formula_valid(a, parse("(~~q -> q) \\/ ~~q \\/ ~q"), b.eval_budget)
    return _yn(_validity(one) == _validity(two)), f"{_validity(one)} / {_validity(two)}"


def jankov_pool(max_size: int = 10) -> list[HeytingAlgebra]:
    """Catalog, chain and cyclic algebras with at most ``max_size`` elements."""
    pool = [catalog(n) for n in CATALOG_NAMES if catalog(n).n <= max_size]
    pool += [chain(n) for n in range(2, max_size + 1)]
    pool += [cyclic(n) for n in range(2, max_size + 1)]
    return pool


def jankov_mismatches(pool: list[HeytingAlgebra], budget: int) -> tuple[int, list[tuple[str, str]]]:
    pairs, bad = 0, []
    for a in pool:
        if second_greatest(a) is None:
            continue
        x = jankov_formula(a).formula
        for b in pool:
            pairs += 1
            valid = formula_valid(b, x, budget) == "valid"
            if valid != (in_sh(a, b).verdict == "no"):
                bad.append((a.name or str(a.n), b.name or str(b.n)))
    return pairs, bad


def _jankov_correspondence(b: Budgets, max_size):
    pairs, bad = jankov_mismatches(jankov_pool(int(max_size)), b.eval_budget)
    return _yn(not bad), f"{pairs} pairs, {len(bad)} mismatches" + (f": {bad[:5]}" if bad else "")


def _jankov_valid(b: Budgets, x, y):
    res = formula_valid(_alg(y), jankov_formula(_alg(x)).formula, b.eval_budget)
    return _validity(res), "valid" if res == "valid" else "refuting valuation found"


KINDS: dict[str, Callable] = {
    "embeds": _embeds, "surjects": _surjects, "subdirect": _subdirect, "subdirectly_irreducible": _si,
    "member": _member, "q_irreducible": _q_irreducible, "weakly_projective": _weakly_projective, "tnp": _tnp,
    "bad_preimage": _bad_preimage, "primitive": _primitive, "sc_primitive": _sc_primitive,
    "free_size": _free_size, "formula": _formula, "instance_premises": _instance_premises,
    "instance_check": _instance_check, "glivenko_agreement": _glivenko_agreement,
    "jankov_correspondence": _jankov_correspondence, "jankov_valid": _jankov_valid,
}


def run_check(spec: dict, budgets: Budgets) -> CheckResult:
    fn = KINDS[spec["kind"]]
    kwargs = {"certificate": spec["certificate"]} if "certificate" in spec else {}
    t0 = time.perf_counter()
    try:
        verdict, cert = fn(budgets, *spec["args"], **kwargs)
    except BudgetExceeded as exc:
        verdict, cert = EXCEEDS, str(exc)
    return CheckResult(spec["name"], spec["anchor"], spec["expected"], verdict, cert, time.perf_counter() - t0)


def run_repro(suite: str = "all", budgets: Budgets | None = None, only: Callable[[str], bool] | None = None,
              progress: Callable[[CheckResult], None] | None = None) -> ReproReport:
    """Run one suite (or ``"all"``); rows come out ordered by check name."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    budgets = Budgets() if budgets is None else budgets
    specs = [s for s in expected_checks() if suite == "all" or s["name"].split(".")[0] == suite]
    if only is not None:
        specs = [s for s in specs if only(s["name"])]
    report = ReproReport(suite, budgets)
    for spec in sorted(specs, key=lambda s: s["name"]):
        res = run_check(spec, budgets)
        report.checks.append(res)
        if progress is not None:
            progress(res)
    return report


__all__ = ["CheckResult", "ReproReport", "run_repro", "run_check", "expected_checks", "jankov_pool",
           "jankov_mismatches", "MINTS_SUBSTITUTION", "SUITES"]
