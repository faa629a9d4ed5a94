"""
How large can n get?
====================

Each subset needs one small GF(2) determinant, and the 2^n of them are
computed in batches on bit-packed rows.  This times the sweep as n grows,
and shows the optional process pool.
"""

import os
import time

import numpy as np

from quasitrees import quasi_tree_polynomial
from quasitrees.sampling import random_bouquet

rng = np.random.default_rng(0)
for n in (8, 12, 16, 18):
    b = random_bouquet(n, 0.5, rng)
    start = time.perf_counter()
    r = quasi_tree_polynomial(b)
    print(f"n={n:2d}  tau={r.tau:7d}  {time.perf_counter() - start:6.2f}s")

# Integer minors cost more but stay exact (int64 when safe, Python ints otherwise).
b = random_bouquet(14, 0.5, rng)
start = time.perf_counter()
r = quasi_tree_polynomial(b, "integer")
print(f"integer n=14: largest coefficient {max(r.integer_poly.coeffs.values())}, "
      f"{time.perf_counter() - start:.2f}s")

workers = os.cpu_count() or 1
b = random_bouquet(20, 0.5, rng)
start = time.perf_counter()
r = quasi_tree_polynomial(b, workers=workers)
print(f"n=20 on {workers} worker(s): tau={r.tau}, {time.perf_counter() - start:.1f}s")
