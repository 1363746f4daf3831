"""
Curvature terms of Bochner formulas
===================================

The curvature term Ric_R(T) sums R(X_i, e_j) acting on T over slots and
frames. For R = h KN g it has closed forms; here they are checked against
the brute-force double sum.
"""

# %%
import numpy as np

import curvlab as cl
from curvlab.gallery import random_algcurv, random_pform, random_symform

rng = np.random.default_rng(2)
n = 6
h = random_symform(rng, n)
hg = cl.kulkarni_nomizu(h, cl.metric(n))

# %%
# General tensors, symmetric 2-tensors, forms and curvature tensors.
T = rng.standard_normal((n, n, n))
print("order 3 :", cl.norm(cl.ric_term_hg_general(h, T) - cl.ric_term_bruteforce(hg, T)))
S = random_symform(rng, n)
print("Sym2    :", cl.norm(cl.ric_term_hg_sym2(h, S) - cl.ric_term_bruteforce(hg, S)))
w = random_pform(rng, n, 2)
print("2-form  :", cl.norm(cl.ric_term_hg_pform(h, w).components - cl.ric_term_bruteforce(hg, w.components)))
R = random_algcurv(rng, n)
print("curv    :", cl.norm(cl.ric_term_hg_curv(h, R) - cl.ric_term_bruteforce(hg, R)))

# %%
# On the unit sphere p-forms are eigenvectors with eigenvalue p(n-p).
for p in range(1, n):
    w = random_pform(rng, n, p).components
    out = cl.ric_term_bruteforce(cl.unit_sphere(n), w)
    print(f"p = {p}: Ric(w)/w = {cl.inner_product(out, w) / cl.inner_product(w, w):.12g}")

# %%
# The quadratic form also equals the eigenvalue expansion
# sum_a lambda_a |Xi_a w|^2 over the curvature operator's eigenbivectors.
direct, spectral = cl.spectral_weitzenboeck(R, random_pform(rng, n, 3))
print("direct", direct, "spectral", spectral)
