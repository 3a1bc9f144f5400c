"""Finite posets and finite Heyting algebras stored as operation tables.

Elements of an algebra are the integers ``0..n-1``; ``meet``, ``join`` and
``imp`` are ``n x n`` integer arrays.  Algebras built from posets list
up-sets by size, so ``bot == 0`` and ``top == n - 1`` for those, but nothing
in the package relies on that.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class BudgetExceeded(RuntimeError):
    """Raised when a search or construction would exceed its configured cap."""


class Poset:
    """A finite partial order with a boolean ``leq`` table.

    ``leq[i, j]`` is true iff ``i <= j``.  The relation is checked on
    construction.
    """

    def __init__(self, leq, labels: Sequence[str] | None = None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n):
            raise ValueError("leq must be square")
        if not leq.diagonal().all():
            raise ValueError("leq is not reflexive")
        if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
            raise ValueError("leq is not antisymmetric")
        # transitivity: leq o leq must stay inside leq
        composed = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
        if (composed & ~leq).any():
            raise ValueError("leq is not transitive")
        self.n = n
        self.leq = leq
        self.leq.setflags(write=False)
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("wrong number of labels")

    @classmethod
    def from_covers(cls, elements: Sequence[str], covers: Iterable[tuple[str, str]]) -> "Poset":
        idx = {e: i for i, e in enumerate(elements)}
        if len(idx) != len(elements):
            raise ValueError("duplicate element names")
        n = len(elements)
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            if a not in idx or b not in idx:
                raise ValueError(f"cover ({a}, {b}) names an unknown element")
            leq[idx[a], idx[b]] = True
        # Warshall closure; a cycle shows up as an antisymmetry violation
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        return cls(leq, elements)

    @classmethod
    def chain(cls, k: int) -> "Poset":
        return cls(np.triu(np.ones((k, k), dtype=bool)))

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        lt = self.leq & ~np.eye(self.n, dtype=bool)
        # j covers i iff i < j with nothing strictly between
        between = (lt.astype(np.int64) @ lt.astype(np.int64)) > 0
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(lt & ~between))]

    def up(self, x: int) -> int:
        """Bitmask of the principal up-set of ``x``."""
        return sum(1 << j for j in np.flatnonzero(self.leq[x]))

    def down(self, x: int) -> int:
        return sum(1 << j for j in np.flatnonzero(self.leq[:, x]))

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if self.leq[i].sum() == 1]

    def minimal(self) -> list[int]:
        return [i for i in range(self.n) if self.leq[:, i].sum() == 1]

    def induced(self, members: Sequence[int]) -> "Poset":
        members = list(members)
        return Poset(self.leq[np.ix_(members, members)], [self.labels[i] for i in members])

    def upsets(self) -> list[int]:
        """All up-sets as bitmasks, sorted by (size, mask)."""
        # decide points from the top down; a point may join only once its
        # strict successors are all in
        order = sorted(range(self.n), key=lambda i: int(self.leq[i].sum()))
        ups = [self.up(i) & ~(1 << i) for i in range(self.n)]
        out = [0]
        for i in order:
            bit = 1 << i
            out += [m | bit for m in out if m & ups[i] == ups[i]]
        return sorted(out, key=lambda m: (bin(m).count("1"), m))

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={[(self.labels[a], self.labels[b]) for a, b in self.covers]})"


class HeytingAlgebra:
    """A finite Heyting algebra given by its operation tables."""

    def __init__(self, meet, join, imp, bot: int, top: int, labels: Sequence[str] | None = None,
                 name: str | None = None):
        self.meet = np.asarray(meet, dtype=np.int32)
        self.join = np.asarray(join, dtype=np.int32)
        self.imp = np.asarray(imp, dtype=np.int32)
        self.n = self.meet.shape[0]
        for t in (self.meet, self.join, self.imp):
            if t.shape != (self.n, self.n):
                raise ValueError("operation tables must be n x n")
            if self.n and (t.min() < 0 or t.max() >= self.n):
                raise ValueError("table entry out of range")
            t.setflags(write=False)
        self.bot = int(bot)
        self.top = int(top)
        if not (0 <= self.bot < self.n and 0 <= self.top < self.n):
            raise ValueError("bot/top out of range")
        self.labels = list(labels) if labels is not None else None
        self.name = name

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<HeytingAlgebra{tag} n={self.n}>"

    @property
    def nontrivial(self) -> bool:
        return self.bot != self.top

    def neg(self, a: int) -> int:
        return int(self.imp[a, self.bot])

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    @cached_property
    def leq(self) -> np.ndarray:
        return self.meet == np.arange(self.n)[:, None]

    @cached_property
    def downset_sizes(self) -> np.ndarray:
        return self.leq.sum(axis=0)

    @cached_property
    def invariant(self) -> tuple:
        """Isomorphism invariant used to prefilter exact searches."""
        ups = self.leq.sum(axis=1)
        return (self.n, tuple(sorted(zip(self.downset_sizes.tolist(), ups.tolist()))))

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        return self.poset.covers

    @cached_property
    def poset(self) -> Poset:
        return Poset(self.leq, [self.label(i) for i in range(self.n)])

    def coatoms(self) -> list[int]:
        return [a for a, b in self.covers if b == self.top]

    def interval(self, a: int) -> tuple["HeytingAlgebra", np.ndarray]:
        """The algebra ``[bot, a]`` with ``x -> y`` read as ``(x -> y) /\\ a``.

        It is isomorphic to the quotient by the principal filter of ``a``;
        the returned array maps each member to its element in ``self``.
        """
        members = np.flatnonzero(self.leq[:, a])
        pos = np.full(self.n, -1, dtype=np.int32)
        pos[members] = np.arange(len(members))
        sub = np.ix_(members, members)
        imp = self.meet[self.imp[sub], a]
        alg = HeytingAlgebra(pos[self.meet[sub]], pos[self.join[sub]], pos[imp],
                             pos[self.bot], pos[a],
                             [self.label(i) for i in members] if self.labels else None)
        return alg, members

    def restrict(self, members: Iterable[int], name: str | None = None) -> tuple["HeytingAlgebra", np.ndarray]:
        """Subalgebra on ``members`` (must be closed); returns it and the inclusion array."""
        members = np.array(sorted(set(int(m) for m in members)), dtype=np.int32)
        pos = np.full(self.n, -1, dtype=np.int32)
        pos[members] = np.arange(len(members))
        sub = np.ix_(members, members)
        tables = [pos[t[sub]] for t in (self.meet, self.join, self.imp)]
        if any((t < 0).any() for t in tables) or pos[self.bot] < 0 or pos[self.top] < 0:
            raise ValueError("member set is not closed under the operations")
        alg = HeytingAlgebra(*tables, pos[self.bot], pos[self.top],
                             [self.label(i) for i in members] if self.labels else None, name)
        return alg, members

    def closure(self, seed: Iterable[int]) -> np.ndarray:
        """Sorted member array of the subalgebra generated by ``seed``."""
        have = np.zeros(self.n, dtype=bool)
        have[self.bot] = have[self.top] = True
        for s in seed:
            have[int(s)] = True
        new = np.flatnonzero(have)
        while len(new):
            cur = np.flatnonzero(have)
            found = np.concatenate([
                t[np.ix_(new, cur)].ravel() for t in (self.meet, self.join, self.imp)
            ] + [self.imp[np.ix_(cur, new)].ravel()])
            fresh = np.unique(found[~have[found]])
            have[fresh] = True
            new = fresh
        return np.flatnonzero(have)

    def to_dict(self) -> dict:
        return {"n": self.n, "bot": self.bot, "top": self.top,
                "meet": self.meet.tolist(), "join": self.join.tolist(), "imp": self.imp.tolist()}

    @classmethod
    def from_dict(cls, d: dict, name: str | None = None) -> "HeytingAlgebra":
        alg = cls(d["meet"], d["join"], d["imp"], d["bot"], d["top"], name=name)
        if alg.n != d["n"]:
            raise ValueError("declared n does not match the tables")
        return alg


# ------------------------------------------------------------- validation

@dataclass
class ValidationReport:
    ok: bool
    nontrivial: bool
    failures: list[tuple[str, tuple[int, ...]]] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_algebra(a: HeytingAlgebra, max_failures: int = 20) -> ValidationReport:
    """Exhaustively check the Heyting algebra laws; each failure carries a witness."""
    n = a.n
    M, J, I = a.meet, a.join, a.imp
    x = np.arange(n)
    failures: list[tuple[str, tuple[int, ...]]] = []

    def record(law: str, mask: np.ndarray):
        hits = np.argwhere(mask)
        if len(hits):
            failures.append((law, tuple(int(v) for v in hits[0])))

    for name, T in (("meet", M), ("join", J)):
        record(f"{name} idempotent", T[x, x] != x)
        record(f"{name} commutative", T != T.T)
        record(f"{name} associative", T[T[:, :, None], x[None, None, :]] != T[x[:, None, None], T[None, :, :]])
    record("absorption meet/join", M[x[:, None], J] != x[:, None])
    record("absorption join/meet", J[x[:, None], M] != x[:, None])
    record("bot is least", M[a.bot, x] != a.bot)
    record("top is greatest", J[a.top, x] != a.top)
    record("distributivity", M[x[:, None, None], J[None, :, :]] != J[M[:, :, None], M[:, None, :]])
    leq = M == x[:, None]
    # meet(a, b) <= c  iff  a <= imp(b, c), indices (a, b, c)
    lhs = leq[M[:, :, None], x[None, None, :]]
    rhs = leq[x[:, None, None], I[None, :, :]]
    record("residuation", lhs != rhs)
    failures = failures[:max_failures]
    return ValidationReport(not failures, a.bot != a.top, failures)


# ---------------------------------------------------------- constructions

def upset_algebra(p: Poset, name: str | None = None) -> HeytingAlgebra:
    """Algebra of up-sets: meet = intersection, join = union, relative complement via down-sets."""
    masks = p.upsets()
    index = {m: i for i, m in enumerate(masks)}
    down = [p.down(i) for i in range(p.n)]
    full = (1 << p.n) - 1
    k = len(masks)
    meet = np.empty((k, k), dtype=np.int32)
    join = np.empty((k, k), dtype=np.int32)
    imp = np.empty((k, k), dtype=np.int32)
    for i, u in enumerate(masks):
        for j, v in enumerate(masks):
            meet[i, j] = index[u & v]
            join[i, j] = index[u | v]
            bad = u & ~v
            dn = 0
            while bad:
                low = bad & -bad
                dn |= down[low.bit_length() - 1]
                bad ^= low
            imp[i, j] = index[full & ~dn]
    labels = ["{" + ",".join(p.labels[b] for b in range(p.n) if m >> b & 1) + "}" for m in masks]
    alg = HeytingAlgebra(meet, join, imp, index[0], index[full], labels, name)
    alg.frame = p
    alg.upset_masks = masks
    return alg


def chain(n: int) -> HeytingAlgebra:
    if n < 1:
        raise ValueError("chain needs n >= 1")
    x = np.arange(n)
    meet = np.minimum.outer(x, x)
    join = np.maximum.outer(x, x)
    imp = np.where(x[:, None] <= x[None, :], n - 1, x[None, :])
    return HeytingAlgebra(meet, join, imp, 0, n - 1, name=f"chain{n}")


def trivial() -> HeytingAlgebra:
    z = np.zeros((1, 1), dtype=np.int32)
    return HeytingAlgebra(z, z, z, 0, 0, name="trivial")


def product(algebras: Sequence[HeytingAlgebra], max_size: int = 200_000):
    """Direct product; returns the algebra and the list of projection arrays."""
    algebras = list(algebras)
    if not algebras:
        raise ValueError("product of an empty list")
    sizes = [a.n for a in algebras]
    total = int(np.prod(sizes, dtype=np.int64))
    if total > max_size:
        raise BudgetExceeded(f"product has {total} elements, budget {max_size}")
    coords = np.array(list(itertools.product(*[range(s) for s in sizes])), dtype=np.int64).reshape(total, len(sizes))
    radix = np.ones(len(sizes), dtype=np.int64)
    for i in range(len(sizes) - 2, -1, -1):
        radix[i] = radix[i + 1] * sizes[i + 1]

    def table(op: str) -> np.ndarray:
        out = np.zeros((total, total), dtype=np.int64)
        for k, a in enumerate(algebras):
            c = coords[:, k]
            out += getattr(a, op)[np.ix_(c, c)].astype(np.int64) * radix[k]
        return out

    bot = int(sum(a.bot * r for a, r in zip(algebras, radix)))
    top = int(sum(a.top * r for a, r in zip(algebras, radix)))
    name = "x".join(a.name or "?" for a in algebras)
    alg = HeytingAlgebra(table("meet"), table("join"), table("imp"), bot, top, name=name)
    projections = [coords[:, k].astype(np.int32) for k in range(len(sizes))]
    return alg, projections


# ------------------------------------------------ Rieger-Nishimura ladder

def rn_ladder(depth: int) -> Poset:
    """The first ``depth`` levels of the one-variable universal frame.

    Level 1 holds the two maximal points (``a0`` forcing the generator,
    ``a1`` refuting it).  Every further point refutes the generator and
    sees an antichain of earlier points containing a point of the level just
    below; single-successor points are omitted because they would duplicate
    their successor.  Each level from 2 on contributes two points.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    # point -> (level, set of strict successors)
    succ: list[frozenset[int]] = [frozenset(), frozenset()]
    level = [1, 1]
    names = ["a0", "a1"]
    for d in range(2, depth + 1):
        existing = range(len(succ))
        new = []
        for size in (1, 2, 3):
            for combo in itertools.combinations(existing, size):
                if size == 1 and combo != (0,):
                    continue
                if not any(level[c] == d - 1 for c in combo):
                    continue
                if any(b in succ[a] or a in succ[b] for a, b in itertools.combinations(combo, 2)):
                    continue
                new.append(frozenset(combo).union(*(succ[c] for c in combo)))
        for k, s in enumerate(new):
            succ.append(s)
            level.append(d)
            names.append(f"w{d}{'ab'[k] if len(new) <= 2 else k}")
    n = len(succ)
    leq = np.eye(n, dtype=bool)
    for i, s in enumerate(succ):
        for j in s:
            leq[i, j] = True
    p = Poset(leq, names)
    p.generator_point = 0
    return p


def rn_ladder_prefix(depth: int) -> HeytingAlgebra:
    alg = upset_algebra(rn_ladder(depth), name=f"RN{depth}")
    return alg


def min_generators(a: HeytingAlgebra, cap: int = 3) -> int | None:
    """Least ``k <= cap`` such that some ``k`` elements generate ``a``; ``None`` past the cap."""
    gens = find_generating_set(a, cap)
    return None if gens is None else len(gens)


def find_generating_set(a: HeytingAlgebra, cap: int = 3) -> tuple[int, ...] | None:
    """A smallest generating set (first in lexicographic order), or ``None`` if larger than ``cap``."""
    cached = getattr(a, "_min_gens", {})
    if cap in cached:
        return cached[cap]
    found = None
    # an element already produced by the constants never helps
    base = set(a.closure(()).tolist())
    pool = [x for x in range(a.n) if x not in base]
    for k in range(0, cap + 1):
        for combo in itertools.combinations(pool, k):
            if len(a.closure(combo)) == a.n:
                found = combo
                break
        if found is not None:
            break
    cached[cap] = found
    a._min_gens = cached
    return found
