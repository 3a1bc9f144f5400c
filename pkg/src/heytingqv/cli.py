"""Command-line front-end.

Algebras are addressed as ``kind:arg``: ``chain:4``, ``cyclic:7``,
``catalog:C10p`` (``catalog:C7`` names the 7-element cyclic algebra),
``file:PATH``, ``product:A,B``, ``free:B,k``, ``rn:k`` or ``trivial``.

Exit codes: 0 when a verdict was decided, 2 when a search exceeded its
budget, 1 on usage or validation errors (``repro run`` exits 1 on red rows).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, fields
from typing import Sequence, TextIO

import numpy as np

from . import io as hio
from .algebra import BudgetExceeded, HeytingAlgebra, Poset, product, validate_algebra
from .catalog import standard_algebra
from .config import ENV_VAR, Budgets
from .evaluation import RefutationWitness, formula_valid, instance_check, rule_valid, separates
from .formula import Formula, ParseError, Rule, format_formula, format_rule, parse, parse_rule, rule_library
from .jankov import in_sh, jankov_formula
from .morphisms import Filter, Homomorphism, filters, find_homs, quotient, subalgebras, subdirect_embedding_check
from .quasivariety import EXCEEDS, Verdict, free_algebra, member, primitive, q_irreducible, sc_primitive_cyclic
from .quasivariety import totally_non_projective, weakly_projective
from .repro import SUITES, run_repro

EXIT_OK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2
INLINE_TABLES = 64  # algebras in certificates carry their tables up to this size


class UsageError(Exception):
    pass


@dataclass
class Config:
    budgets: Budgets
    output: str = "text"  # text | json | dot


# ------------------------------------------------------------ addressing

def _split_top(text: str) -> list[str]:
    """Split on commas outside brackets, so ``product:[product:A,B],C`` nests."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p[1:-1] if p.startswith("[") and p.endswith("]") else p for p in parts]


def resolve(addr: str, budgets: Budgets) -> HeytingAlgebra:
    kind, _, arg = addr.partition(":")
    if kind == "file":
        obj = hio.load(arg)
        if isinstance(obj, Poset):
            from .algebra import upset_algebra
            return upset_algebra(obj, name=arg)
        return obj
    if kind == "product":
        parts = _split_top(arg)
        if len(parts) < 2:
            raise UsageError("product needs at least two factors")
        alg, _ = product([resolve(p, budgets) for p in parts])
        alg.name = f"product({arg})"
        return alg
    if kind == "free":
        parts = _split_top(arg)
        if len(parts) != 2 or not parts[1].isdigit():
            raise UsageError("free needs the form free:B,k")
        return free_algebra(budgets.handle(resolve(parts[0], budgets)), int(parts[1]))
    return standard_algebra(addr)


# ------------------------------------------------------------ serialization

def algebra_json(a: HeytingAlgebra) -> dict:
    d = {"name": a.name, "n": a.n}
    if a.n <= INLINE_TABLES:
        d.update(a.to_dict())
    else:
        d["tables_omitted"] = True
    return d


def to_json(obj):
    """JSON-ready form of verdicts, certificates and library objects."""
    if isinstance(obj, Verdict):
        return {"verdict": obj.verdict, "certificate": to_json(obj.certificate)}
    if isinstance(obj, HeytingAlgebra):
        return algebra_json(obj)
    if isinstance(obj, Homomorphism):
        return {"source": obj.source.name, "target": obj.target.name, "map": obj.tolist()}
    if isinstance(obj, Filter):
        return {"generator": obj.generator, "members": sorted(obj.members)}
    if isinstance(obj, RefutationWitness):
        return {"valuation": obj.valuation, "value": obj.value, "labels": obj.to_dict()}
    if isinstance(obj, (Formula, Rule)):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _brief(obj) -> str:
    if isinstance(obj, HeytingAlgebra):
        return f"{obj.name or 'algebra'} ({obj.n} elements)"
    if isinstance(obj, Homomorphism):
        return str(obj.tolist())
    if isinstance(obj, Verdict):
        return obj.verdict
    if isinstance(obj, (list, tuple)) and len(obj) > 6:
        return f"[{len(obj)} items]"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_brief(x) for x in obj) + "]"
    return str(obj)


class Out:
    def __init__(self, cfg: Config, stream: TextIO):
        self.cfg = cfg
        self.stream = stream

    def emit(self, data, text: str | None = None):
        if self.cfg.output == "json":
            self.stream.write(json.dumps(to_json(data), indent=2) + "\n")
        else:
            self.stream.write((text if text is not None else _text(data)) + "\n")


def _text(data) -> str:
    if isinstance(data, Verdict):
        lines = [data.verdict]
        for k, v in data.certificate.items():
            lines.append(f"  {k}: {_brief(v)}")
        return "\n".join(lines)
    return str(data)


def _verdict_code(v: Verdict) -> int:
    return EXIT_BUDGET if v.verdict == EXCEEDS else EXIT_OK


# ------------------------------------------------------------ commands

def _alg(args, name):
    return resolve(getattr(args, name), args.cfg.budgets)


def cmd_alg(args, out: Out) -> int:
    b = args.cfg.budgets
    if args.action == "show":
        a = _alg(args, "A")
        labels = [a.label(x) for x in range(a.n)]
        data = {"name": a.name, "n": a.n, "bot": a.bot, "top": a.top, "labels": labels,
                "covers": [list(c) for c in a.covers], **a.to_dict()}
        text = [f"{a.name or 'algebra'}: {a.n} elements, bot={a.bot}, top={a.top}"]
        text += [f"  {x}: {labels[x]}" for x in range(a.n)]
        text.append("covers: " + " ".join(f"{x}<{y}" for x, y in a.covers))
        out.emit(data, "\n".join(text))
        return EXIT_OK
    if args.action == "check":
        a = _alg(args, "A")
        rep = validate_algebra(a)
        out.emit({"ok": rep.ok, "nontrivial": rep.nontrivial, "failures": rep.failures},
                 "valid Heyting algebra" if rep.ok else "not a Heyting algebra: " + "; ".join(
                     f"{law} at {w}" for law, w in rep.failures))
        return EXIT_OK if rep.ok else EXIT_USAGE
    if args.action == "homs":
        a, c = _alg(args, "A"), _alg(args, "B")
        mode = "injective" if args.injective else "surjective" if args.surjective else "bijective" if args.iso else "all"
        maps, truncated = find_homs(a, c, mode, cap=args.limit)
        out.emit({"mode": mode, "count": len(maps), "truncated": truncated, "maps": [h.tolist() for h in maps]},
                 f"{len(maps)} {mode} homomorphisms" + (" (truncated)" if truncated else "") + "".join(
                     f"\n  {h.tolist()}" for h in maps))
        return EXIT_BUDGET if truncated else EXIT_OK
    if args.action == "subalgebras":
        a = _alg(args, "A")
        subs = subalgebras(a)
        out.emit([{"n": s.n, "universe": incl.tolist()} for s, incl in subs],
                 f"{len(subs)} subalgebras up to isomorphism" + "".join(
                     f"\n  {s.n} elements: {incl.tolist()}" for s, incl in subs))
        return EXIT_OK
    if args.action == "quotients":
        a = _alg(args, "A")
        rows = []
        for f in filters(a):
            q, canon = quotient(a, f)
            rows.append({"filter": sorted(f.members), "generator": f.generator, "size": q.n, "map": canon.tolist()})
        out.emit(rows, f"{len(rows)} quotients" + "".join(
            f"\n  by [{r['generator']}, top]: {r['size']} elements" for r in rows))
        return EXIT_OK
    if args.action == "subdirect":
        a = _alg(args, "A")
        factors = [resolve(x, b) for x in args.factors]
        got = subdirect_embedding_check(a, factors)
        v = Verdict("yes", {"embedding": got[1]}) if got is not None else Verdict("no", {})
        out.emit(v)
        return EXIT_OK
    if args.action == "product":
        alg, _ = product([resolve(x, b) for x in args.factors])
        out.emit(alg.to_dict(), f"product with {alg.n} elements")
        return EXIT_OK
    if args.action == "free":
        f = free_algebra(b.handle(_alg(args, "A")), args.k)
        out.emit(f.to_dict(), f"free algebra on {args.k} generators: {f.n} elements")
        return EXIT_OK
    if args.action == "export":
        a = _alg(args, "A")
        obj = a.poset if args.poset else a
        if args.format == "json":
            d = hio.poset_to_dict(obj) if args.poset else a.to_dict()
            args.stdout.write(json.dumps(d) + "\n")
        else:
            args.stdout.write(hio.export_dot(obj, name=a.name or "hasse"))
        return EXIT_OK
    raise UsageError(f"unknown alg action {args.action!r}")


def _rule_arg(text: str) -> Rule:
    name, _, n = text.partition(":")
    if name in ("visser", "mints", "harrop", "modus_ponens", "mp"):
        return rule_library(name, int(n) if n else None)
    return parse_rule(text)


def _substitution(items: Sequence[str]) -> dict[str, Formula]:
    out = {}
    for item in items:
        var, sep, f = item.partition("=")
        if not sep:
            raise UsageError(f"substitution entries look like p=formula, got {item!r}")
        out[var.strip()] = parse(f)
    return out


def _validity_data(a: HeytingAlgebra, res) -> tuple[dict, str]:
    if res == "valid":
        return {"verdict": "valid"}, "valid"
    d = res.to_dict()
    return {"verdict": "refuted", "witness": d, "indices": res.valuation}, "refuted by " + ", ".join(
        f"{k} = {v}" for k, v in d["valuation"].items()) + f" (value {d['value']})"


def cmd_logic(args, out: Out) -> int:
    b = args.cfg.budgets
    a = _alg(args, "A")
    if args.action == "valid":
        res = formula_valid(a, parse(args.formula), b.eval_budget)
        out.emit(*_validity_data(a, res))
        return EXIT_OK
    if args.action == "rule-valid":
        res = rule_valid(a, _rule_arg(args.rule), b.eval_budget)
        data, text = _validity_data(a, res)
        if res != "valid":
            data["witness"]["premise_values"] = res.to_dict()["premise_values"]
        out.emit(data, text)
        return EXIT_OK
    if args.action == "instance-check":
        chk = instance_check(a, _rule_arg(args.rule), _substitution(args.sub), b.eval_budget)
        concl = _validity_data(a, chk.conclusion_result)[0]
        data = {"verdict": chk.verdict, "instance": format_rule(chk.instance),
                "premises": [_validity_data(a, r)[0] for r in chk.premise_results], "conclusion": concl}
        out.emit(data, f"{chk.verdict}: {format_rule(chk.instance)}")
        return EXIT_OK
    if args.action == "separates":
        gamma = [parse(g) for g in args.gamma]
        ok = separates(a, gamma, parse(args.formula), b.eval_budget)
        out.emit({"verdict": "yes" if ok else "no"}, "yes" if ok else "no")
        return EXIT_OK
    raise UsageError(f"unknown logic action {args.action!r}")


def cmd_rules(args, out: Out) -> int:
    r = rule_library(args.name, args.n)
    out.emit({"rule": format_rule(r), "premises": [format_formula(p) for p in r.premises],
              "conclusion": format_formula(r.conclusion)}, format_rule(r))
    return EXIT_OK


def cmd_qvar(args, out: Out) -> int:
    b = args.cfg.budgets
    if args.action == "free":
        f = free_algebra(b.handle(_alg(args, "B")), args.k)
        out.emit(f.to_dict(), f"free algebra on {args.k} generators: {f.n} elements")
        return EXIT_OK
    if args.action in ("member", "irreducible", "projective"):
        a, q = _alg(args, "A"), b.handle(_alg(args, "B"))
        fn = {"member": member, "irreducible": q_irreducible, "projective": weakly_projective}[args.action]
        try:
            v = fn(a, q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.action == "tnp":
        v = totally_non_projective(_alg(args, "A"), b.handle(_alg(args, "A")))
    elif args.action == "primitive":
        v = primitive(b.handle(_alg(args, "B")))
    elif args.action == "sc-primitive":
        try:
            v = sc_primitive_cyclic(_alg(args, "B"), b.handle(_alg(args, "B")))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError(f"unknown qvar action {args.action!r}")
    out.emit(v)
    return _verdict_code(v)


def cmd_jankov(args, out: Out) -> int:
    a = _alg(args, "A")
    try:
        jf = jankov_formula(a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.action == "formula":
        out.emit({"formula": str(jf.formula), "variables": list(jf.variables)}, str(jf.formula))
        return EXIT_OK
    c = _alg(args, "B")
    res = formula_valid(c, jf.formula, args.cfg.budgets.eval_budget)
    sh = in_sh(a, c)
    data = {"formula_valid": res == "valid", "in_sh": sh.verdict, "agree": (res == "valid") == (sh.verdict == "no")}
    if res != "valid":
        data["witness"] = res.to_dict()
    out.emit(data, f"X(A) {'valid' if res == 'valid' else 'refuted'} in B; A in SH(B): {sh.verdict}")
    return EXIT_OK


def cmd_repro(args, out: Out) -> int:
    def progress(c):
        if not args.quiet and args.cfg.output != "json":
            args.stderr.write(f"{c.status:>14}  {c.name}\n")
            args.stderr.flush()

    rep = run_repro(args.suite, args.cfg.budgets, progress=progress)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_json(times=not args.no_times))
    if args.cfg.output == "json":
        args.stdout.write(rep.to_json(times=not args.no_times))
    else:
        args.stdout.write(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_USAGE


# ------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    # shared options may appear at any level; SUPPRESS keeps a subcommand
    # from resetting a value given earlier on the line
    common = _Parser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budgets", help="overrides such as free_cap=100000,power_cap=2")
    for f in fields(Budgets):
        common.add_argument(f"--budget-{f.name.replace('_', '-')}", dest=f"budget_{f.name}", type=int, metavar="N")

    p = _Parser(prog="heytingqv", description="Finite Heyting algebras, rules and quasivarieties.",
                parents=[common])
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    g = sub.add_parser("alg", help="construct and inspect algebras", parents=[common])
    s = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("show", "check", "subalgebras", "quotients"):
        s.add_parser(name, parents=[common]).add_argument("A")
    h = s.add_parser("homs", parents=[common])
    h.add_argument("A")
    h.add_argument("B")
    kind = h.add_mutually_exclusive_group()
    kind.add_argument("--injective", action="store_true")
    kind.add_argument("--surjective", action="store_true")
    kind.add_argument("--iso", action="store_true")
    h.add_argument("--limit", type=int, default=10_000)
    sd = s.add_parser("subdirect", parents=[common])
    sd.add_argument("A")
    sd.add_argument("factors", nargs="+")
    pr = s.add_parser("product", parents=[common])
    pr.add_argument("factors", nargs="+")
    fr = s.add_parser("free", parents=[common])
    fr.add_argument("A")
    fr.add_argument("k", type=int)
    ex = s.add_parser("export", parents=[common])
    ex.add_argument("A")
    ex.add_argument("--poset", action="store_true", help="export the order of A as a poset")
    ex.add_argument("--format", choices=("dot", "json"), default="dot")

    g = sub.add_parser("logic", help="validity and refutation", parents=[common])
    s = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = s.add_parser("valid", parents=[common])
    v.add_argument("A")
    v.add_argument("formula")
    v = s.add_parser("rule-valid", parents=[common])
    v.add_argument("A")
    v.add_argument("rule", help="'A1, A2 / B' or a library name (mints, harrop, visser:N)")
    v = s.add_parser("instance-check", parents=[common])
    v.add_argument("A")
    v.add_argument("rule")
    v.add_argument("--sub", action="append", default=[], metavar="VAR=FORMULA")
    v = s.add_parser("separates", parents=[common])
    v.add_argument("A")
    v.add_argument("formula")
    v.add_argument("--gamma", action="append", default=[], metavar="FORMULA")

    g = sub.add_parser("rules", help="print library rules", parents=[common])
    g.add_argument("name", choices=("visser", "mints", "harrop", "modus_ponens"))
    g.add_argument("n", type=int, nargs="?")

    g = sub.add_parser("qvar", help="quasivariety predicates", parents=[common])
    s = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("member", "irreducible", "projective"):
        x = s.add_parser(name, parents=[common])
        x.add_argument("A")
        x.add_argument("B")
    s.add_parser("tnp", parents=[common]).add_argument("A")
    s.add_parser("primitive", parents=[common]).add_argument("B")
    s.add_parser("sc-primitive", parents=[common]).add_argument("B")
    x = s.add_parser("free", parents=[common])
    x.add_argument("B")
    x.add_argument("k", type=int)

    g = sub.add_parser("jankov", help="characteristic formulas", parents=[common])
    s = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    s.add_parser("formula", parents=[common]).add_argument("A")
    x = s.add_parser("check", parents=[common])
    x.add_argument("A")
    x.add_argument("B")

    g = sub.add_parser("repro", help="reproduce the finite computations", parents=[common])
    s = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    x = s.add_parser("run", parents=[common])
    x.add_argument("suite", choices=SUITES + ("all",))
    x.add_argument("--out", help="also write the JSON report here")
    x.add_argument("--no-times", action="store_true", help="omit wall times (byte-stable reports)")
    x.add_argument("--quiet", action="store_true")
    return p


COMMANDS = {"alg": cmd_alg, "logic": cmd_logic, "rules": cmd_rules, "qvar": cmd_qvar, "jankov": cmd_jankov,
            "repro": cmd_repro}


def _config(args) -> Config:
    budgets = Budgets.from_env()
    if getattr(args, "budgets", ""):
        budgets = budgets.override(args.budgets)
    flags = ",".join(f"{f.name}={getattr(args, 'budget_' + f.name)}" for f in fields(Budgets)
                     if hasattr(args, "budget_" + f.name))
    if flags:
        budgets = budgets.override(flags)
    return Config(budgets, "json" if getattr(args, "json", False) else "text")


def run_command(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(list(argv))
        args.cfg = _config(args)
        args.stdout, args.stderr = stdout, stderr
        return COMMANDS[args.group](args, Out(args.cfg, stdout))
    except BudgetExceeded as exc:
        if "--json" in argv:
            stdout.write(json.dumps({"verdict": EXCEEDS, "certificate": {"reason": str(exc)}}) + "\n")
        else:
            stdout.write(f"{EXCEEDS}: {exc}\n")
        return EXIT_BUDGET
    except (UsageError, ParseError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"error: {msg}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["Config", "UsageError", "resolve", "run_command", "main", "build_parser", "to_json", "ENV_VAR"]
