"""Named algebras: chains, finite cyclic algebras, and the stored figure frames.

Finite one-generated Heyting algebras are exactly the up-set algebras of
finite up-sets of the Rieger-Nishimura ladder, so ``cyclic(n)`` walks the
up-sets of ladder prefixes (equivalently, principal-filter quotients of
the prefix algebras) and keeps those with ``n`` up-sets.
"""

from __future__ import annotations

import json
import warnings
from functools import lru_cache
from importlib import resources

from .algebra import HeytingAlgebra, Poset, chain, min_generators, rn_ladder, rn_ladder_prefix, trivial, upset_algebra
from .morphisms import dedup_isomorphic, find_hom, subdirect_embedding_check

CATALOG_NAMES = ("C5p", "C7p", "C10p", "C12p", "C16")

class CatalogInconsistent(RuntimeError):
    pass

# ------------------------------------------------------------ cyclic algebras

def _upset_count_below(masks: list[int], u: int) -> int:
    return sum(1 for m in masks if m & u == m)

def cyclic_candidates(n: int, max_depth: int | None = None) -> list[HeytingAlgebra]:
    """All one-generated ``n``-element algebras up to isomorphism, smallest ladder depth first."""
    if n < 2:
        raise ValueError("cyclic algebras need n >= 2")
    # a point at ladder depth d sits on a chain of d points, so depth <= n - 1
    max_depth = n - 1 if max_depth is None else max_depth
    depth = max(1, max_depth)
    frame = rn_ladder(depth)
    masks = frame.upsets()
    found = []
    for u in masks:
        if u == 0 or _upset_count_below(masks, u) != n:
            continue
        members = [i for i in range(frame.n) if u >> i & 1]
        sub = frame.induced(members)
        alg = upset_algebra(sub)
        # the generator is the up-set of points forcing it (only a0 does)
        gen_mask = 1 if 0 in members else 0
        alg.generators = (alg.upset_masks.index(gen_mask),)
        found.append(alg)
    out = dedup_isomorphic(found)
    for k, alg in enumerate(out):
        if min_generators(alg, 1) is None:
            raise AssertionError(f"ladder quotient of size {n} is not one-generated")
        alg.name = f"C{n}" if k == 0 else f"C{n}#{k}"
    return out

@lru_cache(maxsize=None)
def cyclic(n: int) -> HeytingAlgebra:
    """An ``n``-element cyclic algebra (the first candidate found)."""
    cands = cyclic_candidates(n)
    if not cands:
        raise ValueError(f"no one-generated Heyting algebra has {n} elements")
    return cands[0]

# ------------------------------------------------------------ figure frames

@lru_cache(maxsize=None)
def _frame_data() -> dict:
    text = resources.files("heytingqv").joinpath("data/catalog_frames.json").read_text()
    return {k: v for k, v in json.loads(text).items() if not k.startswith("_")}

def catalog_frame(name: str) -> Poset:
    """The stored frame of a catalog algebra, every drawn node being a point."""
    try:
        d = _frame_data()[name]
    except KeyError:
        raise ValueError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG_NAMES)}") from None
    return Poset.from_covers(d["elements"], [tuple(c) for c in d["covers"]])

@lru_cache(maxsize=None)
def _raw_catalog(name: str) -> HeytingAlgebra:
    return upset_algebra(catalog_frame(name), name=name)

def consistency_checks() -> list[tuple[str, bool]]:
    """Relations between the figure algebras that the transcription must satisfy."""
    c5, c7, c10, c12, c16 = (_raw_catalog(n) for n in CATALOG_NAMES)
    out = [
        ("C16 has 16 elements", c16.n == 16),
        ("C5p embeds into C7p", find_hom(c5, c7, "injective") is not None),
        ("C10p is a subdirect product of C5p and C7p", subdirect_embedding_check(c10, [c5, c7]) is not None),
        ("C7p is a homomorphic image of C10p", find_hom(c10, c7, "surjective") is not None),
        ("C7p does not embed into C10p", find_hom(c7, c10, "injective") is None),
        ("C10p embeds into C16", find_hom(c10, c16, "injective") is not None),
        ("C12p embeds into C16", find_hom(c12, c16, "injective") is not None),
        ("C10p is a homomorphic image of C12p", find_hom(c12, c10, "surjective") is not None),
        ("C10p does not embed into C12p", find_hom(c10, c12, "injective") is None),
    ]
    return out

class CatalogWarning(UserWarning):
    pass

@lru_cache(maxsize=None)
def catalog_violations() -> tuple[str, ...]:
    return tuple(claim for claim, ok in consistency_checks() if not ok)

def check_catalog(strict: bool = False) -> tuple[str, ...]:
    """Run the consistency gate once; warn (or raise when ``strict``) on violated relations."""
    bad = catalog_violations()
    if bad:
        msg = "figure transcription violates: " + "; ".join(bad)
        if strict:
            raise CatalogInconsistent(msg)
        if not _warned:
            _warned.append(True)
            warnings.warn(msg, CatalogWarning, stacklevel=3)
    return bad

_warned: list = []

def catalog(name: str, check: bool = True) -> HeytingAlgebra:
    if name not in CATALOG_NAMES:
        raise ValueError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG_NAMES)}")
    if check:
        check_catalog()
    return _raw_catalog(name)

# ------------------------------------------------------------ dispatcher

def standard_algebra(addr: str) -> HeytingAlgebra:
    """Build ``chain:n``, ``cyclic:n``, ``catalog:NAME``, ``rn:k`` or ``trivial``."""
    kind, _, arg = addr.partition(":")
    if kind == "trivial":
        return trivial()
    if kind == "catalog":
        if arg in CATALOG_NAMES:
            return catalog(arg)
        # unprimed labels Cn name the n-element cyclic algebras
        if arg[:1] == "C" and arg[1:].isdigit():
            return cyclic(int(arg[1:]))
        return catalog(arg)
    try:
        k = int(arg)
    except ValueError:
        raise ValueError(f"bad algebra address {addr!r}") from None
    if kind == "chain":
        return chain(k)
    if kind == "cyclic":
        return cyclic(k)
    if kind in ("rn", "rn_ladder_prefix"):
        return rn_ladder_prefix(k)
    raise ValueError(f"unknown algebra kind {kind!r}")

def generator_of(alg: HeytingAlgebra) -> int | None:
    gens = getattr(alg, "generators", None)
    return gens[0] if gens and len(gens) == 1 else None

__all__ = ["CATALOG_NAMES", "catalog", "catalog_frame", "consistency_checks", "catalog_violations",
           "check_catalog", "cyclic", "cyclic_candidates", "standard_algebra", "CatalogInconsistent",
           "CatalogWarning"]
