"""Which quasivarieties generated by small cyclic algebras are primitive?

Run:  python demos/cyclic_primitivity.py [n ...]    (default: 2 3 4 5 6 8 9 11)
"""

import sys
import time
import warnings

from heytingqv.catalog import CatalogWarning, catalog, cyclic
from heytingqv.morphisms import isomorphic
from heytingqv.quasivariety import QvarHandle, primitive

warnings.simplefilter("ignore", CatalogWarning)

sizes = [int(x) for x in sys.argv[1:]] or [2, 3, 4, 5, 6, 8, 9, 11]
c7p = catalog("C7p")
for n in sizes:
    t0 = time.perf_counter()
    v = primitive(QvarHandle(cyclic(n)))
    line = f"Q(C{n}): {v.verdict:<15} {time.perf_counter() - t0:6.1f}s"
    if v.verdict == "no":
        irr = v.certificate["irreducible"]
        line += f"  failing irreducible has {irr.n} elements" + (" (isomorphic to C7p)" if isomorphic(irr, c7p) else "")
    print(line, flush=True)
