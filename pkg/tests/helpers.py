"""Independent checkers for certificates produced by the library."""

import itertools

from heytingqv.evaluation import evaluate
from heytingqv.morphisms import find_homs
from heytingqv.quasivariety import NO, YES


def homs_separate_points(a, b) -> bool:
    """A embeds into a power of B: the homomorphisms A -> B separate every pair."""
    maps, _ = find_homs(a, b)
    return all(any(h(x) != h(y) for h in maps) for x, y in itertools.combinations(range(a.n), 2))


def q_congruence_kernels(a, b):
    """Generators k of the filters [k, top] whose quotient lies in Q(B), by the definition."""
    return [k for k in range(a.n) if homs_separate_points(a.interval(k)[0], b)]


def q_irreducible_oracle(a, b) -> bool:
    # the proper Q-congruences meet in the identity iff their filters meet in {top}
    proper = [k for k in q_congruence_kernels(a, b) if k != a.top]
    members = set(range(a.n))
    for k in proper:
        members &= {x for x in range(a.n) if a.leq[k, x]}
    return members != {a.top}


def check_wp_certificate(a, q, v) -> bool:
    """Re-verify a weak-projectivity certificate from scratch."""
    c = v.certificate
    if v.verdict == NO:
        pre, surj = c["preimage"], c["surjection"]
        return (surj.verify() and surj.surjective and surj.source is pre
                and not find_homs(a, pre, "injective")[0] and homs_separate_points(pre, q.generator))
    if v.verdict == YES and "section" in c:
        b, gens, terms = q.generator, c["generators"], c["section"]
        names = [f"x{i + 1}" for i in range(len(gens))]
        if [evaluate(a, t, dict(zip(names, gens))) for t in terms] != list(gens):
            return False
        images = {tuple(h(g) for g in gens) for h in find_homs(a, b, gens=gens)[0]}
        return all(tuple(evaluate(b, t, dict(zip(names, col))) for t in terms) in images
                   for col in itertools.product(range(b.n), repeat=len(gens)))
    return v.verdict == YES
