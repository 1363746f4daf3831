"""
Weighted vanishing conditions
=============================

On a manifold with density e^{-f}, the curvature tensor is corrected by
h KN g, where h is built from Hess f. If the n - p smallest eigenvalues of
the corrected operator have positive sum, harmonic p-forms vanish.
The Gaussian on flat space is the model case: zero curvature, yet the
weighted partial sum is exactly 1.
"""

# %%
import numpy as np

import curvlab as cl

n = 6
flat = cl.AlgCurv.zero(n)
g = cl.metric(n)
for p in (1, 2):
    a = cl.check_vanishing(flat, cl.WeightSpec(g, p))
    b = cl.check_vanishing(flat, cl.mu_list(g), p)
    print(f"p = {p}: Hessian weight {a.partial_sum:.15g} ({a.verdict}), "
          f"eigenvalue weight {b.partial_sum:.15g} ({b.verdict})")

# %%
# In the middle degree p = n/2 only the eigenvalue weight is defined.
try:
    cl.check_vanishing(flat, cl.WeightSpec(g, 3))
except cl.errors.MiddleDegree as exc:
    print("middle degree:", exc)
print(cl.check_vanishing(flat, cl.mu_list(g), 3).to_dict())

# %%
# A failing condition draws no conclusion: hyperbolic space fails the test,
# which says nothing about its harmonic forms.
print(cl.check_vanishing(-cl.unit_sphere(n), None, 2).to_dict())

# %%
# The same checks from the command line:
#
#   curvlab gallery gaussian --n 6 --check --p 2
#   curvlab gallery gaussian --n 4 --check --p 2 --route proposition
