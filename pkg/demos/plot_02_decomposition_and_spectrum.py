"""
Decomposition and the curvature operator
========================================

Every algebraic curvature tensor splits into a scalar part, a trace-free
Ricci part and a Weyl part. The curvature operator on two-forms has
C(n, 2) real eigenvalues; l-nonnegativity asks that the l smallest sum to a
nonnegative number.
"""

# %%
import numpy as np

import curvlab as cl
from curvlab.gallery import random_algcurv

rng = np.random.default_rng(1)
R = random_algcurv(rng, 5)
d = cl.decompose(R)
print("scalar curvature:", d.scal)
print("|Ric0| =", cl.norm(d.ric0), " |W| =", cl.norm(d.weyl.tensor))

# %%
# The three pieces are mutually orthogonal and add back up to R.
parts = [d.scalar_part().tensor, d.ricci_part().tensor, d.weyl.tensor]
print("reconstruction error:", cl.norm(sum(parts) - R.tensor))
print("<scalar, ricci> =", cl.inner_product(parts[0], parts[1]))
print("Ricci of the Weyl part:", cl.norm(cl.ricci(d.weyl)))

# %%
# Spectrum and partial sums.
spec = cl.spectrum(R)
print("eigenvalues:", np.round(spec.eigenvalues, 3))
for l in (1, 3, 5, 10):
    rep = cl.partial_sum_verdict(spec, l)
    print(f"l = {l:2d}: sum = {rep.partial_sum: .4f} -> {rep.verdict}")
