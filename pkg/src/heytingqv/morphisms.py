"""Homomorphisms, subalgebras, filters and quotients of finite Heyting algebras.

A homomorphism out of ``A`` is fixed by the images of a generating set of
``A``, so the searches here enumerate image tuples for a small generating
set, extend each tuple along a precomputed derivation of every element, and
keep the maps that preserve all three tables.  Candidate images of each
generator are pruned first by checking the one-generated subalgebra alone.
Since every tuple is tried, an empty answer is a proof that no map exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import BudgetExceeded, HeytingAlgebra, find_generating_set, product

MODES = ("all", "first", "injective", "surjective", "bijective")


@dataclass(eq=False)
class Homomorphism:
    source: HeytingAlgebra
    target: HeytingAlgebra
    map: np.ndarray

    def __post_init__(self):
        self.map = np.asarray(self.map, dtype=np.int32)

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @property
    def injective(self) -> bool:
        return len(np.unique(self.map)) == self.source.n

    @property
    def surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.n

    def kernel(self) -> "Filter":
        return Filter(self.source, frozenset(np.flatnonzero(self.map == self.target.top).tolist()))

    def verify(self) -> bool:
        return is_homomorphism(self.source, self.target, self.map)

    def tolist(self) -> list[int]:
        return self.map.tolist()

    def __repr__(self) -> str:
        return f"Homomorphism({self.source!r} -> {self.target!r}, {self.map.tolist()})"


@dataclass(frozen=True)
class Filter:
    algebra: HeytingAlgebra
    members: frozenset

    @property
    def generator(self) -> int:
        """Least member; every filter of a finite algebra is principal."""
        a = self.algebra
        g = a.top
        for m in self.members:
            g = int(a.meet[g, m])
        return g

    def verify(self) -> bool:
        a = self.algebra
        mem = self.members
        if a.top not in mem:
            return False
        if any(int(a.meet[x, y]) not in mem for x in mem for y in mem):
            return False
        return all(y in mem for x in mem for y in np.flatnonzero(a.leq[x]).tolist())

    def __len__(self) -> int:
        return len(self.members)


def is_homomorphism(a: HeytingAlgebra, b: HeytingAlgebra, h) -> bool:
    h = np.asarray(h)
    if h.shape != (a.n,) or h.min() < 0 or h.max() >= b.n:
        return False
    if h[a.bot] != b.bot or h[a.top] != b.top:
        return False
    grid = np.ix_(h, h)
    return all(np.array_equal(h[getattr(a, op)], getattr(b, op)[grid]) for op in ("meet", "join", "imp"))


# ------------------------------------------------------------ derivations

def _derivation(a: HeytingAlgebra, gens: Sequence[int]):
    """Steps ``(target, table, x, y)`` producing every element from gens and constants."""
    key = tuple(gens)
    cache = a.__dict__.setdefault("_derivations", {})
    if key in cache:
        return cache[key]
    known = np.zeros(a.n, dtype=bool)
    known[[a.bot, a.top, *gens]] = True
    steps: list[tuple[int, int, int, int]] = []
    tables = (a.meet, a.join, a.imp)
    frontier = np.flatnonzero(known)
    while len(frontier):
        cur = np.flatnonzero(known)
        fresh = []
        for t, tab in enumerate(tables):
            for rows, cols in ((frontier, cur), (cur, frontier)):
                block = tab[np.ix_(rows, cols)]
                for i, j in zip(*np.nonzero(~known[block])):
                    z = int(block[i, j])
                    if not known[z]:
                        known[z] = True
                        steps.append((z, t, int(rows[i]), int(cols[j])))
                        fresh.append(z)
        frontier = np.array(sorted(fresh), dtype=np.int64)
    if not known.all():
        raise ValueError("the given elements do not generate the algebra")
    cache[key] = steps
    return steps


def generating_set(a: HeytingAlgebra) -> tuple[int, ...]:
    """A small generating set: the least one when it has at most 2 elements, else greedy."""
    gens = getattr(a, "generators", None)
    if gens is not None:
        return tuple(gens)
    small = find_generating_set(a, 2) if a.n <= 400 else None
    if small is not None:
        return small
    gens = []
    have = set(a.closure(()).tolist())
    # greedy: pick the element whose addition grows the closure most
    while len(have) < a.n:
        best = max((x for x in range(a.n) if x not in have),
                   key=lambda x: (len(a.closure([*gens, x])), -x))
        gens.append(best)
        have = set(a.closure(gens).tolist())
    return tuple(gens)


def _extend(a: HeytingAlgebra, b: HeytingAlgebra, gens, images, steps) -> np.ndarray:
    """Images of every element for a batch of generator-image tuples (rows)."""
    images = np.asarray(images, dtype=np.int32)
    h = np.full((images.shape[0], a.n), -1, dtype=np.int32)
    h[:, a.bot] = b.bot
    h[:, a.top] = b.top
    for k, g in enumerate(gens):
        h[:, g] = images[:, k]
    tables = (b.meet, b.join, b.imp)
    for z, t, x, y in steps:
        h[:, z] = tables[t][h[:, x], h[:, y]]
    return h


def _single_images(a: HeytingAlgebra, b: HeytingAlgebra, g: int) -> list[int]:
    """Images of ``g`` that give a homomorphism on the subalgebra generated by ``g``."""
    members = a.closure([g])
    sub, incl = a.restrict(members)
    gi = int(np.searchsorted(incl, g))
    steps = _derivation(sub, (gi,))
    h = _extend(sub, b, (gi,), np.arange(b.n)[:, None], steps)
    return [int(v) for v in range(b.n) if is_homomorphism(sub, b, h[v])]


def find_homs(a: HeytingAlgebra, b: HeytingAlgebra, mode: str = "all", cap: int = 10**6,
              gens: Sequence[int] | None = None):
    """All homomorphisms ``a -> b`` satisfying ``mode``, up to ``cap`` of them.

    Returns ``(maps, truncated)``.  Maps come in lexicographic order of the
    generator images.  With ``mode="first"`` at most one map is returned.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if mode == "first":
        cap = 1
    if mode in ("injective", "bijective") and a.n > b.n:
        return [], False
    if mode in ("surjective", "bijective") and a.n < b.n:
        return [], False
    if b.nontrivial and not a.nontrivial:
        return [], False
    if mode == "bijective" and a.invariant != b.invariant:
        return [], False
    gens = tuple(generating_set(a) if gens is None else gens)
    steps = _derivation(a, gens)
    choices = [_single_images(a, b, g) for g in gens]
    if mode in ("injective", "bijective"):
        # an embedding is injective on each one-generated piece too
        choices = [[v for v in ch if len(b.closure([v])) == len(a.closure([g]))]
                   for g, ch in zip(gens, choices)]
    out: list[Homomorphism] = []
    batch = 4096
    it = itertools.product(*choices)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            break
        imgs = np.array(chunk, dtype=np.int32).reshape(len(chunk), len(gens))
        h = _extend(a, b, gens, imgs, steps)
        for row in h:
            if mode in ("injective", "bijective") and len(np.unique(row)) != a.n:
                continue
            if mode in ("surjective", "bijective") and len(np.unique(row)) != b.n:
                continue
            if not is_homomorphism(a, b, row):
                continue
            out.append(Homomorphism(a, b, row.copy()))
            if len(out) >= cap:
                return out, mode != "first"
    return out, False


def find_hom(a, b, mode="first"):
    """The first homomorphism of the given kind, or ``None``."""
    if mode == "all":
        mode = "first"
    maps, _ = find_homs(a, b, mode, cap=1)
    return maps[0] if maps else None


def embeds(a: HeytingAlgebra, b: HeytingAlgebra) -> bool:
    return find_hom(a, b, "injective") is not None


def surjects(a: HeytingAlgebra, b: HeytingAlgebra) -> bool:
    return find_hom(a, b, "surjective") is not None


def isomorphic(a: HeytingAlgebra, b: HeytingAlgebra) -> bool:
    return a.invariant == b.invariant and find_hom(a, b, "bijective") is not None


def dedup_isomorphic(algebras: Iterable[HeytingAlgebra]) -> list[HeytingAlgebra]:
    kept: list[HeytingAlgebra] = []
    by_inv: dict = {}
    for alg in algebras:
        bucket = by_inv.setdefault(alg.invariant, [])
        if any(isomorphic(alg, other) for other in bucket):
            continue
        bucket.append(alg)
        kept.append(alg)
    return kept


# ------------------------------------------------------------ subalgebras

def subalgebra_generated(a: HeytingAlgebra, seed: Iterable[int]):
    """The least subalgebra containing ``seed``, with its inclusion map."""
    members = a.closure(seed)
    sub, incl = a.restrict(members)
    return sub, Homomorphism(sub, a, incl)


def subalgebra_universes(a: HeytingAlgebra, max_count: int = 100_000) -> list[np.ndarray]:
    """Member arrays of all subalgebras, smallest first.

    Every subalgebra is reached from the constants by adding one element at
    a time and closing, so a search over that graph finds them all.
    """
    start = a.closure(())
    seen = {start.tobytes(): start}
    todo = [start]
    while todo:
        cur = todo.pop()
        have = np.zeros(a.n, dtype=bool)
        have[cur] = True
        for x in np.flatnonzero(~have):
            nxt = a.closure(np.append(cur, x))
            key = nxt.tobytes()
            if key not in seen:
                seen[key] = nxt
                todo.append(nxt)
                if len(seen) > max_count:
                    raise BudgetExceeded(f"more than {max_count} subalgebras")
    return sorted(seen.values(), key=lambda m: (len(m), m.tolist()))


def subalgebras(a: HeytingAlgebra, max_count: int = 100_000) -> list[tuple[HeytingAlgebra, Homomorphism]]:
    """Subalgebras up to isomorphism, smallest first, each with an inclusion map."""
    out = []
    by_inv: dict = {}
    for members in subalgebra_universes(a, max_count):
        sub, incl = a.restrict(members)
        bucket = by_inv.setdefault(sub.invariant, [])
        if any(isomorphic(sub, other) for other in bucket):
            continue
        bucket.append(sub)
        out.append((sub, Homomorphism(sub, a, incl)))
    return out


# ------------------------------------------------------ filters, quotients

def principal_filter(a: HeytingAlgebra, x: int) -> Filter:
    return Filter(a, frozenset(np.flatnonzero(a.leq[x]).tolist()))


def filters(a: HeytingAlgebra) -> list[Filter]:
    """All filters, smallest first.  In a finite algebra these are the principal ones."""
    fs = [principal_filter(a, x) for x in range(a.n)]
    return sorted(fs, key=lambda f: (len(f), sorted(f.members)))


def quotient(a: HeytingAlgebra, f: Filter | int):
    """Quotient by a filter (or by the principal filter of an element).

    ``x`` and ``y`` are identified iff ``(x -> y) /\\ (y -> x)`` lies in the
    filter.  The quotient is realised on the interval below the filter's
    least element ``g``, with canonical map ``x |-> x /\\ g``.
    """
    g = f.generator if isinstance(f, Filter) else int(f)
    q, members = a.interval(g)
    pos = np.full(a.n, -1, dtype=np.int32)
    pos[members] = np.arange(len(members))
    canon = pos[a.meet[:, g]]
    return q, Homomorphism(a, q, canon)


def subdirect_embedding_check(a: HeytingAlgebra, factors: Sequence[HeytingAlgebra], max_size: int = 200_000):
    """An embedding of ``a`` into the product of ``factors`` with every projection onto.

    Returns ``(product_algebra, embedding)`` or ``None`` when no such
    embedding exists.  Such an embedding is a family of surjections
    ``a -> factor`` whose kernels meet in ``{top}``, which is what is searched.
    """
    factors = list(factors)
    surj = []
    for f in factors:
        maps, _ = find_homs(a, f, "surjective")
        if not maps:
            return None
        # one representative per kernel is enough for joint injectivity
        by_kernel = {}
        for h in maps:
            by_kernel.setdefault(h.kernel().generator, h)
        surj.append(sorted(by_kernel.items()))
    for combo in itertools.product(*surj):
        g = a.bot
        for k, _ in combo:
            g = int(a.join[g, k])
        if g != a.top:
            continue
        prod, _ = product(factors, max_size)
        sizes = [f.n for f in factors]
        idx = np.zeros(a.n, dtype=np.int64)
        for (k, h), s in zip(combo, sizes):
            idx = idx * s + h.map
        emb = Homomorphism(a, prod, idx)
        return prod, emb
    return None
