"""Decision procedures for the quasivariety Q(B) generated by a finite algebra B.

Facts used throughout (all for finite algebras):

* ``A`` lies in Q(B) iff the homomorphisms ``A -> B`` separate points.  For
  Heyting algebras it is enough that every coatom is sent below top by
  some such map.
* Quotients are intervals ``[bot, k]`` (principal filters), so the
  Q-irreducibility test runs over the elements ``k`` of ``A``.
* A surjection ``B' -> A`` restricts to the subalgebra of ``B'`` generated
  by preimages of a generating set of ``A``, so only ``g``-generated
  preimages matter.  These are exactly the algebras ``B_J``: the
  subalgebra of ``B^J`` generated by the columns of a set ``J`` of
  ``g``-tuples of ``B``.  ``J`` = all tuples gives the free algebra.
* If ``A`` is a retract of the free algebra (``A`` is Q-projective) then
  every surjection onto ``A`` splits, so ``A`` is weakly Q-projective.

Every verdict is three-valued: ``"yes"``, ``"no"`` or ``"exceeds-budget"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .algebra import BudgetExceeded, HeytingAlgebra, find_generating_set, min_generators, validate_algebra
from .formula import BOT, TOP, And, Formula, Imp, Or, Var
from .morphisms import find_hom, find_homs, isomorphic, subalgebras

YES, NO, EXCEEDS = "yes", "no", "exceeds-budget"


@dataclass
class Verdict:
    verdict: str
    certificate: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict == YES

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            return self.verdict == other
        if isinstance(other, Verdict):
            return self.verdict == other.verdict
        return NotImplemented

    def __repr__(self) -> str:
        keys = ", ".join(self.certificate)
        return f"Verdict({self.verdict!r}{', ' + keys if keys else ''})"


class QvarHandle:
    """Q(B) for a finite generator ``B`` together with the search budgets.

    ``free_cap`` bounds free-algebra closures, ``table_cap`` the size up to
    which a closure is materialized with full operation tables,
    ``filter_cap`` the number of quotients swept, ``power_cap`` the largest
    power of the generator used by the witness search, ``witness_cap`` the
    number of candidate preimages it builds, and ``term_cap`` the number of
    term functions explored by the section search.
    """

    def __init__(self, generator: HeytingAlgebra, free_cap: int = 20_000, filter_cap: int = 10**6,
                 power_cap: int = 3, gen_cap: int = 3, table_cap: int = 4096, witness_cap: int = 4000,
                 term_cap: int = 20_000, check: bool = True):
        if check and not validate_algebra(generator):
            raise ValueError("generator is not a Heyting algebra")
        for name, v in [("free_cap", free_cap), ("filter_cap", filter_cap), ("power_cap", power_cap),
                        ("gen_cap", gen_cap), ("table_cap", table_cap), ("witness_cap", witness_cap),
                        ("term_cap", term_cap)]:
            if v < 1:
                raise ValueError(f"{name} must be positive")
        self.generator = generator
        self.free_cap = free_cap
        self.filter_cap = filter_cap
        self.power_cap = power_cap
        self.gen_cap = gen_cap
        self.table_cap = table_cap
        self.witness_cap = witness_cap
        self.term_cap = term_cap
        self._free: dict[int, HeytingAlgebra] = {}
        self._subs = None
        self._columns: dict[int, list] = {}
        self._member_cache: dict[int, tuple] = {}

    def budgets(self) -> dict[str, int]:
        return {k: getattr(self, k) for k in ("free_cap", "filter_cap", "power_cap", "gen_cap", "table_cap",
                                              "witness_cap", "term_cap")}

    def with_generator(self, generator: HeytingAlgebra) -> "QvarHandle":
        return QvarHandle(generator, check=False, **self.budgets())

    def __repr__(self) -> str:
        return f"Q({self.generator.name or f'<{self.generator.n} elements>'})"

    def subalgebras(self):
        if self._subs is None:
            self._subs = subalgebras(self.generator)
        return self._subs


# ---------------------------------------------------------------- closure

def tuple_closure(b: HeytingAlgebra, seeds, cap: int, name: str | None = None,
                  table_cap: int | None = None) -> HeytingAlgebra:
    """Subalgebra of ``b^w`` generated by the rows of ``seeds`` (shape ``(s, w)``).

    Elements are numbered in discovery order (constants, then seeds, then
    closure in rounds), so the tables depend only on the isomorphism type
    of the pointed algebra.  The result carries ``generators`` (indices of
    the seeds) and ``rows`` (elements as tuples over ``b``).
    """
    seeds = np.asarray(seeds, dtype=np.int64)
    if seeds.ndim == 1:
        seeds = seeds[None, :]
    width = seeds.shape[1]
    limit = cap if table_cap is None else min(cap, table_cap)
    dtype = np.int16
    weights = np.random.default_rng(0).integers(1, 2**62, size=width, dtype=np.int64)
    rows = np.zeros((64, width), dtype=dtype)
    tabs = [np.full((64, 64), -1, dtype=np.int32) for _ in range(3)]
    known_h = np.zeros(0, dtype=np.int64)
    known_id = np.zeros(0, dtype=np.int64)
    count = 0

    def grow(need: int):
        nonlocal rows, tabs
        if need > len(rows):
            size = max(need, 2 * len(rows))
            rows = np.concatenate([rows, np.zeros((size - len(rows), width), dtype=dtype)])
            new = []
            for t in tabs:
                nt = np.full((size, size), -1, dtype=np.int32)
                nt[: len(t), : len(t)] = t
                new.append(nt)
            tabs = new

    def lookup(vecs: np.ndarray) -> np.ndarray:
        nonlocal known_h, known_id, count
        flat = vecs.reshape(-1, width)
        h = flat.astype(np.int64) @ weights
        if len(known_h):
            pos = np.minimum(np.searchsorted(known_h, h), len(known_h) - 1)
            hit = known_h[pos] == h
        else:
            pos = np.zeros(len(h), dtype=np.int64)
            hit = np.zeros(len(h), dtype=bool)
        ids = np.empty(len(h), dtype=np.int64)
        ids[hit] = known_id[pos[hit]]
        if not hit.all():
            miss = np.flatnonzero(~hit)
            uh, first, inv = np.unique(h[miss], return_index=True, return_inverse=True)
            # number new elements by first occurrence, not by hash value
            order = np.argsort(first, kind="stable")
            rank = np.empty_like(order)
            rank[order] = np.arange(len(order))
            new_ids = count + rank
            if count + len(uh) > limit:
                raise BudgetExceeded(f"closure exceeds {limit} elements")
            grow(count + len(uh))
            rows[new_ids] = flat[miss[first]]
            count += len(uh)
            ids[miss] = new_ids[inv.ravel()]
            merged_h = np.concatenate([known_h, uh])
            merged_id = np.concatenate([known_id, new_ids])
            srt = np.argsort(merged_h, kind="stable")
            known_h, known_id = merged_h[srt], merged_id[srt]
        if not np.array_equal(rows[ids], flat):
            raise RuntimeError("row hash collision")
        return ids.reshape(vecs.shape[:-1])

    const = lookup(np.array([np.full(width, b.bot), np.full(width, b.top)]))
    seed_ids = lookup(seeds) if len(seeds) else np.zeros(0, dtype=np.int64)
    done = 0
    while done < count:
        end = count
        block = max(1, 2_000_000 // max(1, end * width))
        stop = min(end, done + block)
        x = rows[done:stop].astype(np.int64)[:, None, :]
        cur = rows[:stop].astype(np.int64)[None, :, :]
        for k, op in enumerate((b.meet, b.join)):
            ids = lookup(op[x, cur])
            # lookup may reallocate the tables, so index them afresh
            tabs[k][done:stop, :stop] = ids
            tabs[k][:stop, done:stop] = ids.T
        tabs[2][done:stop, :stop] = lookup(b.imp[x, cur])
        tabs[2][:stop, done:stop] = lookup(b.imp[cur, x]).T
        done = stop
    n = count
    meet, join, imp = (t[:n, :n].copy() for t in tabs)
    if (meet < 0).any() or (imp < 0).any():
        raise AssertionError("closure tables incomplete")
    alg = HeytingAlgebra(meet, join, imp, int(const[0]), int(const[1]), name=name)
    alg.generators = tuple(int(g) for g in seed_ids)
    alg.rows = rows[:n].copy()
    return alg


def _columns(b: HeytingAlgebra, k: int) -> np.ndarray:
    return np.array(list(itertools.product(range(b.n), repeat=k)), dtype=np.int64).reshape(b.n ** k, k)


def free_algebra(q: QvarHandle, k: int, cap: int | None = None) -> HeytingAlgebra:
    """Free ``k``-generated algebra of Q(B): the subalgebra of ``B^(B^k)`` generated by projections.

    The result carries ``generators`` (the free generators) and ``rows``.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    cap = q.free_cap if cap is None else cap
    if cap == q.free_cap and k in q._free:
        return q._free[k]
    b = q.generator
    cols = _columns(b, k)
    try:
        alg = tuple_closure(b, cols.T, cap, name=f"F{k}({b.name or b.n})", table_cap=q.table_cap)
    except BudgetExceeded:
        raise BudgetExceeded(f"free algebra on {k} generators exceeds {min(cap, q.table_cap)} elements") from None
    if cap == q.free_cap:
        q._free[k] = alg
    return alg


# ------------------------------------------------------------------ member

def member(a: HeytingAlgebra, q: QvarHandle) -> Verdict:
    """Is ``a`` in Q(B)?  Certificates: separating maps, or a pair no map separates."""
    if not a.nontrivial:
        return Verdict(YES, {"separating": []})
    b = q.generator
    if not b.nontrivial:
        return Verdict(NO, {"pair": (a.bot, a.top), "homs_checked": 0})
    homs, _ = find_homs(a, b, "all")
    seps = []
    for c in a.coatoms():
        h = next((h for h in homs if h(c) != b.top), None)
        if h is None:
            return Verdict(NO, {"pair": (c, a.top), "homs_checked": len(homs)})
        if all(h is not s for s in seps):
            seps.append(h)
    return Verdict(YES, {"separating": seps})


def _is_member(a: HeytingAlgebra, q: QvarHandle) -> bool:
    hit = q._member_cache.get(id(a))
    if hit is not None and hit[0] is a:
        return hit[1]
    ok = member(a, q).verdict == YES
    q._member_cache[id(a)] = (a, ok)
    return ok


def _require_member(a: HeytingAlgebra, q: QvarHandle):
    if not _is_member(a, q):
        raise ValueError(f"{a!r} is not a member of {q!r}")


# --------------------------------------------------------- irreducibility

def q_irreducible(a: HeytingAlgebra, q: QvarHandle, _checked: bool = False) -> Verdict:
    """Is ``a`` not a subdirect product of proper Q-quotients?

    The kernels of quotients of ``a`` lying in Q are principal filters
    ``[k, top]``; they meet in ``{top}`` iff the join of their ``k`` is top.
    """
    if not a.nontrivial:
        raise ValueError("Q-irreducibility is defined for nontrivial algebras")
    if not _checked:
        _require_member(a, q)
    kernels = [k for k in range(a.n) if k != a.top and _is_member(a.interval(k)[0], q)]
    w = a.bot
    for k in kernels:
        w = int(a.join[w, k])
    if w != a.top:
        return Verdict(YES, {"witness": w, "kernels": kernels})
    chosen, acc = [], a.bot
    for k in sorted(kernels, key=lambda k: (-int(a.downset_sizes[k]), k)):
        if int(a.join[acc, k]) != acc:
            chosen.append(k)
            acc = int(a.join[acc, k])
        if acc == a.top:
            break
    return Verdict(NO, {"separating_kernels": chosen, "factors": [a.interval(k)[0] for k in chosen]})


# ----------------------------------------------------- witness searches

def _subdirectly_irreducible(a: HeytingAlgebra) -> bool:
    return len(a.coatoms()) == 1


def _no_witness(s: HeytingAlgebra, a: HeytingAlgebra):
    """A surjection ``s -> a`` if ``a`` does not embed into ``s``."""
    if s.n < a.n:
        return None
    surj = find_hom(s, a, "surjective")
    if surj is None or find_hom(a, s, "injective") is not None:
        return None
    return surj


def _pointed_types(q: QvarHandle, g: int) -> list[tuple[np.ndarray, HeytingAlgebra]]:
    """``g``-tuples of the generator up to isomorphism of the pointed subalgebra they generate."""
    if g not in q._columns:
        b = q.generator
        seen = {}
        for col in _columns(b, g):
            s = tuple_closure(b, col[:, None], b.n + 2)
            sig = (s.n, s.meet.tobytes(), s.join.tobytes(), s.imp.tobytes())
            if sig not in seen:
                seen[sig] = (col, s)
        q._columns[g] = list(seen.values())
    return q._columns[g]


def witness_search(a: HeytingAlgebra, q: QvarHandle, max_power: int | None = None):
    """Look for a preimage ``B`` of ``a`` in Q into which ``a`` does not embed.

    Power 1 scans the subalgebras of the generator.  Power ``k`` builds the
    algebras generated by ``k`` pointed ``g``-generated subalgebras of the
    generator side by side.  For subdirectly irreducible ``a`` a surjection
    from such a product factors through one coordinate, so at least one of
    the coordinates must map onto ``a``.
    Returns ``(B, surjection, power)``, or ``(None, reason, power_reached)``.
    """
    max_power = q.power_cap if max_power is None else max_power
    for s, _ in q.subalgebras():
        surj = _no_witness(s, a)
        if surj is not None:
            return s, surj, 1
    if max_power < 2:
        return None, "no witness among subalgebras of the generator", 1
    gens = find_generating_set(a, q.gen_cap)
    if gens is None:
        return None, "no witness among subalgebras of the generator", 1
    types = _pointed_types(q, len(gens))
    onto = {i for i, (_, s) in enumerate(types) if s.n >= a.n and find_hom(s, a, "surjective") is not None}
    if not onto:
        return None, "no pointed subalgebra of the generator maps onto it", max_power
    si = _subdirectly_irreducible(a)
    built = 0
    for k in range(2, max_power + 1):
        for combo in itertools.combinations(range(len(types)), k):
            if si and onto.isdisjoint(combo):
                continue
            if built >= q.witness_cap:
                return None, f"witness search stopped after {built} candidates at power {k}", k - 1
            built += 1
            seeds = np.concatenate([types[i][0][:, None] for i in combo], axis=1)
            try:
                bj = tuple_closure(q.generator, seeds, q.table_cap)
            except BudgetExceeded:
                continue
            surj = _no_witness(bj, a)
            if surj is not None:
                bj.name = f"<{len(gens)}-generated subalgebra of power {k}>"
                return bj, surj, k
    return None, f"no witness up to power {max_power}", max_power


# ------------------------------------------------------ section search

_FORM_OPS = {0: And, 1: Or, 2: Imp}


def _term(deriv, i, names, memo) -> Formula:
    if i in memo:
        return memo[i]
    kind = deriv[i]
    if kind[0] == "bot":
        f = BOT
    elif kind[0] == "top":
        f = TOP
    elif kind[0] == "var":
        f = Var(names[kind[1]])
    else:
        op, x, y = kind
        f = _FORM_OPS[op](_term(deriv, x, names, memo), _term(deriv, y, names, memo))
    memo[i] = f
    return f


def section_search(a: HeytingAlgebra, q: QvarHandle, gens: Sequence[int] | None = None,
                   limit: int | None = None, rounds: int | None = None):
    """Look for terms ``t`` in ``g`` variables making ``a`` a retract of the free algebra.

    Conditions: ``t(gens) = gens`` in ``a``, and for every ``g``-tuple ``c``
    of the generator, ``gens -> t(c)`` extends to a homomorphism.  Then
    ``gens -> t`` is a section of the canonical map from the free algebra
    onto ``a``.  Term functions are explored breadth first, up to ``limit``
    of them (default ``q.term_cap``) and ``rounds`` closure rounds.
    Returns the list of terms (variables ``x1..xg``) or ``None``.
    """
    b = q.generator
    gens = find_generating_set(a, q.gen_cap) if gens is None else tuple(gens)
    if gens is None:
        return None
    g = len(gens)
    if g == 0:
        return []
    homs, _ = find_homs(a, b, "all")
    radix = b.n ** np.arange(g)
    hmask = np.zeros(b.n ** g, dtype=bool)
    allowed = [np.zeros(b.n, dtype=bool) for _ in range(g)]
    for h in homs:
        img = [h(x) for x in gens]
        hmask[int(np.dot(img, radix))] = True
        for i, v in enumerate(img):
            allowed[i][v] = True
    cols = _columns(b, g)
    rows = [np.full(len(cols), b.bot, dtype=np.int16), np.full(len(cols), b.top, dtype=np.int16)]
    avals = [a.bot, a.top]
    deriv: list = [("bot",), ("top",)]
    for i in range(g):
        rows.append(cols[:, i].astype(np.int16))
        avals.append(gens[i])
        deriv.append(("var", i))
    keys: dict = {}
    for idx, (r, v) in enumerate(zip(rows, avals)):
        keys.setdefault((r.tobytes(), v), idx)
    cands: list[list[int]] = [[] for _ in range(g)]
    mats: list[list[np.ndarray]] = [[] for _ in range(g)]
    budget = [10 * q.term_cap]

    def combine(i: int, idx: int):
        """Check every candidate tuple whose ``i``-th entry is the new row ``idx``."""
        others = [k for k in range(g) if k != i]
        if any(not cands[k] for k in others):
            return None
        fixed = rows[idx].astype(np.int64) * radix[i]
        last = others[-1]
        lastmat = np.array(mats[last], dtype=np.int64) * radix[last]
        for head in itertools.product(*[range(len(cands[k])) for k in others[:-1]]):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            base = fixed + sum(mats[k][j].astype(np.int64) * radix[k] for k, j in zip(others, head))
            good = hmask[base + lastmat].all(axis=1)
            if good.any():
                pick = dict(zip(others, (cands[k][j] for k, j in zip(others, head))))
                pick[last] = cands[last][int(np.argmax(good))]
                pick[i] = idx
                return [pick[k] for k in range(g)]
        return None

    def consider(idx: int):
        r = rows[idx]
        for i in range(g):
            if avals[idx] == gens[i] and allowed[i][r].all():
                if g == 1:
                    return [idx]
                hit = combine(i, idx)
                cands[i].append(idx)
                mats[i].append(r)
                if hit is not None:
                    return hit
        return None

    def done(hit):
        names = [f"x{k + 1}" for k in range(g)]
        memo: dict = {}
        return [_term(deriv, h, names, memo) for h in hit]

    for idx in range(len(rows)):
        hit = consider(idx)
        if hit is not None:
            return done(hit)
    tables = (b.meet, b.join, b.imp)
    atabs = (a.meet, a.join, a.imp)
    weights = np.random.default_rng(1).integers(1, 2**62, size=len(cols) + 1, dtype=np.int64)
    hashes = {int(np.append(r.astype(np.int64), v) @ weights) for r, v in zip(rows, avals)}
    mat = np.array(rows, dtype=np.int16)
    av_arr = np.array(avals, dtype=np.int64)
    i = 0
    limit = q.term_cap if limit is None else limit
    rounds = len(rows) + limit if rounds is None else rounds
    while i < len(rows) and len(rows) < limit and i < rounds:
        if len(mat) < len(rows):
            mat = np.array(rows, dtype=np.int16)
            av_arr = np.array(avals, dtype=np.int64)
        xs, xa = mat[i], avals[i]
        ys, ya = mat[: i + 1], av_arr[: i + 1]
        batches = [(0, tables[0][xs[None, :], ys], atabs[0][xa, ya], False),
                   (1, tables[1][xs[None, :], ys], atabs[1][xa, ya], False),
                   (2, tables[2][xs[None, :], ys], atabs[2][xa, ya], False),
                   (2, tables[2][ys, xs[None, :]], atabs[2][ya, xa], True)]
        for op, res, ares, flipped in batches:
            hs = np.concatenate([res.astype(np.int64), ares.astype(np.int64)[:, None]], axis=1) @ weights
            for j, hv in enumerate(hs.tolist()):
                if hv in hashes:
                    continue
                hashes.add(hv)
                rows.append(res[j])
                avals.append(int(ares[j]))
                deriv.append((op, j, i) if flipped else (op, i, j))
                hit = consider(len(rows) - 1)
                if hit is not None:
                    return done(hit)
        i += 1
    return None


# ----------------------------------------------------- weak projectivity

def _sweep(a: HeytingAlgebra, q: QvarHandle, f: HeytingAlgebra):
    seen: dict = {}
    swept = 0
    order = sorted(range(f.n), key=lambda x: (int(f.downset_sizes[x]), x))
    for x in order:
        if f.downset_sizes[x] < a.n:
            continue
        swept += 1
        if swept > q.filter_cap:
            raise BudgetExceeded(f"more than {q.filter_cap} quotients")
        quot, _ = f.interval(x)
        bucket = seen.setdefault(quot.invariant, [])
        if any(isomorphic(quot, other) for other in bucket):
            continue
        bucket.append(quot)
        surj = _no_witness(quot, a)
        if surj is None or not _is_member(quot, q):
            continue
        quot.name = f"{f.name}/{x}"
        return quot, surj, swept
    return None, None, swept


def weakly_projective(a: HeytingAlgebra, q: QvarHandle, _checked: bool = False, quick: bool = False) -> Verdict:
    """Does ``a`` embed into every member of Q that maps onto it?

    Stages, cheapest first: preimages among subalgebras of the generator;
    preimages inside Q(a) (contained in Q); a short section search (proves
    "yes"); preimages in higher powers of the generator; a long section
    search; the exact sweep of free-algebra quotients.  ``quick`` stops
    after the first three stages.
    """
    if not a.nontrivial:
        return Verdict(YES, {"reason": "trivial algebra"})
    if not _checked:
        _require_member(a, q)
    found, info, _ = witness_search(a, q, max_power=1)
    if found is not None:
        return Verdict(NO, {"preimage": found, "surjection": info, "source": "subalgebra of the generator"})
    partial = [info]
    if q.power_cap >= 2 and (a.n < q.generator.n or not isomorphic(a, q.generator)):
        found, info, _ = witness_search(a, q.with_generator(a), max_power=2)
        if found is not None:
            return Verdict(NO, {"preimage": found, "surjection": info, "source": "member of Q(a)"})
        partial.append(f"inside Q(a): {info}")
    gens = find_generating_set(a, q.gen_cap)
    if gens is None:
        return Verdict(EXCEEDS, {"reason": f"needs more than {q.gen_cap} generators", "partial": partial})
    terms = section_search(a, q, gens, limit=min(2000, q.term_cap), rounds=200)
    if terms is not None:
        return Verdict(YES, {"section": terms, "generators": gens, "source": "retract of the free algebra"})
    if quick:
        return Verdict(EXCEEDS, {"partial": partial + ["quick stages only"]})
    if q.power_cap >= 2:
        found, info, _ = witness_search(a, q)
        if found is not None:
            return Verdict(NO, {"preimage": found, "surjection": info, "source": "power of the generator"})
        partial.append(info)
    terms = section_search(a, q, gens)
    if terms is not None:
        return Verdict(YES, {"section": terms, "generators": gens, "source": "retract of the free algebra"})
    partial.append("no section among the explored terms")
    try:
        f = free_algebra(q, len(gens))
    except BudgetExceeded as exc:
        f = None
        partial.append(str(exc))
    if f is not None:
        try:
            quot, surj, swept = _sweep(a, q, f)
        except BudgetExceeded as exc:
            partial.append(str(exc))
        else:
            if quot is None:
                return Verdict(YES, {"free_size": f.n, "quotients_checked": swept, "source": "free algebra sweep"})
            return Verdict(NO, {"preimage": quot, "surjection": surj, "source": "free algebra quotient"})
    return Verdict(EXCEEDS, {"partial": partial})


def totally_non_projective(a: HeytingAlgebra, q: QvarHandle | None = None) -> Verdict:
    """``weakly_projective(a, Q(a))`` negated; ``q`` only supplies budgets."""
    if not a.nontrivial:
        raise ValueError("total non-projectivity is defined for nontrivial algebras")
    qa = QvarHandle(a) if q is None else q.with_generator(a)
    wp = weakly_projective(a, qa, _checked=True)
    flip = {YES: NO, NO: YES, EXCEEDS: EXCEEDS}
    return Verdict(flip[wp.verdict], wp.certificate)


# -------------------------------------------------------------- primitive

def irreducibles(q: QvarHandle) -> list[HeytingAlgebra]:
    """Nontrivial Q-irreducible subalgebras of the generator, up to isomorphism, smallest first."""
    return [s for s, _ in q.subalgebras() if s.nontrivial and q_irreducible(s, q, _checked=True).verdict == YES]


def primitive(q: QvarHandle, stop_at_first: bool = True) -> Verdict:
    """Is every finite Q-irreducible algebra weakly Q-projective?

    Finite Q-irreducibles embed into the generator, so its subalgebras are
    the only candidates.  A quick pass over all of them runs before the
    full decision, so a cheap "no" is not held up by a hard case.  The
    trace lists ``(irreducible, verdict)`` pairs, smallest first.
    """
    irr = irreducibles(q)
    results: dict[int, Verdict] = {}
    for quick in (True, False):
        for i, s in enumerate(irr):
            if i in results and results[i].verdict != EXCEEDS:
                continue
            results[i] = weakly_projective(s, q, _checked=True, quick=quick)
            if results[i].verdict == NO and stop_at_first:
                break
        if stop_at_first and any(r.verdict == NO for r in results.values()):
            break
    trace = [(s, results[i]) for i, s in enumerate(irr) if i in results]
    failures = [(s, wp) for s, wp in trace if wp.verdict == NO]
    undecided = [s for s, wp in trace if wp.verdict == EXCEEDS]
    if failures:
        s, wp = failures[0]
        return Verdict(NO, {"irreducible": s, "preimage": wp.certificate["preimage"], "failures": failures,
                            "trace": trace})
    if undecided:
        return Verdict(EXCEEDS, {"undecided": undecided, "trace": trace})
    return Verdict(YES, {"irreducibles": [s for s, _ in trace], "trace": trace})


def sc_primitive_cyclic(b: HeytingAlgebra, q: QvarHandle | None = None) -> Verdict:
    """Primitivity of the structural completion of Q(b) for one-generated ``b``.

    The structural completion is generated by the one-generated free
    algebra, so this is ``primitive(Q(F))``.  ``q`` only supplies budgets.
    """
    if not b.nontrivial:
        return Verdict(YES, {"reason": "trivial algebra"})
    if min_generators(b, 1) is None:
        raise ValueError("sc_primitive_cyclic needs a one-generated algebra")
    qb = QvarHandle(b) if q is None else q.with_generator(b)
    try:
        f = free_algebra(qb, 1)
    except BudgetExceeded as exc:
        return Verdict(EXCEEDS, {"reason": str(exc)})
    res = primitive(qb.with_generator(f))
    res.certificate["free_algebra"] = f
    return res


__all__ = ["QvarHandle", "Verdict", "member", "free_algebra", "tuple_closure", "q_irreducible",
           "weakly_projective", "totally_non_projective", "primitive", "sc_primitive_cyclic", "irreducibles",
           "witness_search", "section_search", "YES", "NO", "EXCEEDS"]
