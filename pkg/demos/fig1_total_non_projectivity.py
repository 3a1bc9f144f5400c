"""Walk through the C7p example: C7' is totally non-projective.

Run:  python demos/fig1_total_non_projectivity.py
"""

import warnings

from heytingqv.catalog import CatalogWarning, catalog
from heytingqv.morphisms import find_hom, isomorphic, subdirect_embedding_check
from heytingqv.quasivariety import totally_non_projective

warnings.simplefilter("ignore", CatalogWarning)

c5, c7, c10 = catalog("C5p"), catalog("C7p"), catalog("C10p")
print(f"sizes: C5p={c5.n}, C7p={c7.n}, C10p={c10.n}")
print("C5p embeds into C7p:", find_hom(c5, c7, "injective") is not None)
print("C10p is a subdirect product of C5p and C7p:", subdirect_embedding_check(c10, [c5, c7]) is not None)
surj = find_hom(c10, c7, "surjective")
print("C10p maps onto C7p:", surj.tolist())
print("C7p embeds into C10p:", find_hom(c7, c10, "injective") is not None)

v = totally_non_projective(c7)
pre = v.certificate["preimage"]
print(f"\ntotally non-projective: {v.verdict}")
print(f"  preimage found ({v.certificate['source']}): {pre.n} elements, isomorphic to C10p: {isomorphic(pre, c10)}")
