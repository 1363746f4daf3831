"""Named example geometries and seeded random instances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import AlgCurv, curvature_project, decompose, unit_sphere, validate
from .errors import DimensionTooSmall, UnknownExample
from .tensor import PForm, metric

__all__ = [
    "GalleryExample",
    "EXAMPLES",
    "gallery",
    "random_tensor",
    "random_symform",
    "random_tracefree",
    "random_algcurv",
    "random_weyl",
    "random_pform",
]


def random_tensor(rng, n, k) -> np.ndarray:
    return rng.standard_normal((n,) * k)


def random_symform(rng, n) -> np.ndarray:
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


def random_tracefree(rng, n) -> np.ndarray:
    s = random_symform(rng, n)
    return s - np.trace(s) / n * np.eye(n)


def random_algcurv(rng, n) -> AlgCurv:
    return curvature_project(rng.standard_normal((n,) * 4))


def random_weyl(rng, n) -> AlgCurv:
    if n < 4:
        raise DimensionTooSmall("nonzero Weyl tensors need n >= 4")
    return decompose(random_algcurv(rng, n)).weyl


def random_pform(rng, n, p) -> PForm:
    """Standard-normal coefficients on the sorted multi-indices."""
    return PForm.from_compact(rng.standard_normal(math.comb(n, p)), n, p)


@dataclass(frozen=True)
class GalleryExample:
    name: str
    curvature: AlgCurv
    hess_f: np.ndarray
    description: str

    @property
    def n(self):
        return self.curvature.n


EXAMPLES = {
    "sphere": "round unit sphere, constant curvature 1, f = 0",
    "hyperbolic": "hyperbolic space, constant curvature -1, f = 0",
    "flat": "Euclidean space, f = 0",
    "gaussian": "Euclidean space with f = |x|^2/2 (Hess f = g, Laplacian f = n)",
    "weyl-random": "Weyl part of a seeded random curvature tensor, f = 0",
    "random": "seeded random curvature tensor and random Hessian",
}


def gallery(name: str, n: int, seed: int = 0) -> GalleryExample:
    """Build a named example in dimension ``n`` (``n >= 3``).

    The two random examples are reproducible from ``seed``.
    """
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}")
    if n < 3 or (name == "weyl-random" and n < 4):
        raise DimensionTooSmall(f"example {name!r} needs a larger dimension than {n}")
    zero = np.zeros((n, n))
    rng = np.random.default_rng(seed)
    if name == "sphere":
        curv, hess = unit_sphere(n), zero
    elif name == "hyperbolic":
        curv, hess = -unit_sphere(n), zero
    elif name == "flat":
        curv, hess = AlgCurv.zero(n), zero
    elif name == "gaussian":
        curv, hess = AlgCurv.zero(n), metric(n)
    elif name == "weyl-random":
        curv, hess = random_weyl(rng, n), zero
    else:
        curv = random_algcurv(rng, n)
        hess = random_symform(rng, n)
    # every gallery tensor must pass validation at 1e-12
    validate(curv.tensor, tol=1e-12)
    return GalleryExample(name=name, curvature=curv, hess_f=hess, description=EXAMPLES[name])
