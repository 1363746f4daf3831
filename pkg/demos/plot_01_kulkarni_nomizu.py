"""
The Kulkarni-Nomizu product
===========================

Two symmetric forms h, k combine into a tensor with every symmetry of a
Riemannian curvature tensor. The round sphere is the simplest example:
half the product of the metric with itself.
"""

# %%
import numpy as np

import curvlab as cl

n = 4
g = cl.metric(n)
I = cl.unit_sphere(n)
np.testing.assert_allclose(I.tensor, 0.5 * cl.kulkarni_nomizu(g, g).tensor)
print("sectional curvature of the unit sphere on e1^e2:", I.tensor[0, 1, 0, 1])

# %%
# Products of any two symmetric forms validate as curvature tensors; a
# random 4-tensor does not.
rng = np.random.default_rng(0)
h, k = cl.as_symform(rng.standard_normal((n, n))), cl.as_symform(rng.standard_normal((n, n)))
cl.validate(cl.kulkarni_nomizu(h, k).tensor, tol=1e-12)
try:
    cl.validate(rng.standard_normal((n,) * 4))
except cl.errors.SymmetryViolation as exc:
    print("random tensor rejected:", exc)

# %%
# For h = diag(mu), the product h KN g acts diagonally on coordinate
# bivectors with eigenvalue mu_i + mu_j.
mu = np.array([-1.0, 0.5, 2.0, 3.0])
spec = cl.spectrum(cl.kulkarni_nomizu(np.diag(mu), g))
print("eigenvalues of diag(mu) KN g:", spec.eigenvalues)
