"""Seeded property-suite runner.

Each check draws random instances and returns a nonnegative residual; a
check passes when the largest residual over all trials and dimensions is at
most its tolerance. Every trial gets its own generator seeded from
``(seed, check id, n, trial)``, so results do not depend on execution order
or on how trials are spread across workers.
"""

from __future__ import annotations

import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bochner import (
    WeightSpec,
    check_vanishing,
    hg_transposition_sum,
    identity_form_weight,
    identity_sym2_weight,
    mu_bound_check,
    mu_list,
    ric_term_bruteforce,
    ric_term_hg_curv,
    ric_term_hg_general,
    ric_term_hg_pform,
    ric_term_hg_sym2,
    spectral_weitzenboeck,
    weight_proposition,
    weighted_curvature_theorem,
    weyl_remark_check,
)
from .curvature import (
    AlgCurv,
    symmetry_residuals,
    curvature_operator_matrix,
    decompose,
    kulkarni_nomizu,
    ricci,
    unit_sphere,
)
from .gallery import (
    random_algcurv,
    random_pform,
    random_symform,
    random_tensor,
    random_tracefree,
    random_weyl,
)
from .tensor import inner_product, metric, norm

__all__ = ["Check", "CHECKS", "CheckResult", "SuiteReport", "run_suite", "trial_rng"]


def _rel(a, b, floor=0.0):
    """Relative distance; ``floor`` sets the scale when both sides are ~0."""
    a, b = np.asarray(a), np.asarray(b)
    scale = max(np.linalg.norm(b.ravel()), np.linalg.norm(a.ravel()), floor)
    diff = np.linalg.norm((a - b).ravel())
    return float(diff / scale) if scale > 0 else float(diff)


def _kn(h):
    return kulkarni_nomizu(h, metric(h.shape[0]))


def kn_validates(rng, n):
    S = kulkarni_nomizu(random_symform(rng, n), random_symform(rng, n)).tensor
    return max(float(np.max(np.abs(r))) for _, r in symmetry_residuals(S))


def general_vs_oracle(rng, n):
    worst = 0.0
    for k in range(1, 5):
        h, T = random_symform(rng, n), random_tensor(rng, n, k)
        worst = max(worst, _rel(ric_term_hg_general(h, T), ric_term_bruteforce(_kn(h), T), norm(h) * norm(T)))
    return worst


def sym2_vs_oracle(rng, n):
    h, T = random_symform(rng, n), random_symform(rng, n)
    return _rel(ric_term_hg_sym2(h, T), ric_term_bruteforce(_kn(h), T), norm(h) * norm(T))


def pform_vs_oracle(rng, n):
    h, p = random_symform(rng, n), int(rng.integers(1, n + 1))
    w = random_pform(rng, n, p)
    return _rel(ric_term_hg_pform(h, w).components, ric_term_bruteforce(_kn(h), w), norm(h) * norm(w))


def curv_vs_oracle(rng, n):
    h, R = random_symform(rng, n), random_algcurv(rng, n)
    return _rel(ric_term_hg_curv(h, R), ric_term_bruteforce(_kn(h), R), norm(h) * norm(R))


def bianchi_transposition(rng, n):
    R = random_algcurv(rng, n)
    return norm(hg_transposition_sum(random_symform(rng, n), R)) / max(norm(R), 1e-300)


def sphere_form_eigenvalue(rng, n):
    p = int(rng.integers(1, n))
    w = random_pform(rng, n, p).components
    return norm(ric_term_bruteforce(unit_sphere(n), w) - p * (n - p) * w) / norm(w)


def _low_degree(rng, n):
    return int(rng.integers(1, (n + 1) // 2))


def form_weight_identity(rng, n):
    w = random_pform(rng, n, _low_degree(rng, n))
    lhs, rhs = identity_form_weight(random_symform(rng, n), w)
    return abs(lhs - rhs) / (1 + abs(rhs))


def sym2_weight_identity(rng, n):
    lhs, rhs = identity_sym2_weight(random_symform(rng, n), random_tracefree(rng, n))
    return abs(lhs - rhs) / (1 + abs(rhs))


def spectral_identity(rng, n):
    w = random_pform(rng, n, int(rng.integers(1, n)))
    direct, spectral = spectral_weitzenboeck(random_algcurv(rng, n), w)
    return abs(direct - spectral) / max(abs(direct), abs(spectral), 1e-300)


def mu_bound(rng, n):
    w = random_pform(rng, n, int(rng.integers(1, n + 1)))
    lhs, bound = mu_bound_check(random_symform(rng, n), w)
    return max(0.0, bound - lhs) / (1 + abs(bound))


def decomposition(rng, n):
    R = random_algcurv(rng, n)
    d = decompose(R)
    parts = [d.scalar_part().tensor, d.ricci_part().tensor, d.weyl.tensor]
    r2 = inner_product(R.tensor, R.tensor)
    worst = norm(d.reconstruct().tensor - R.tensor) / norm(R.tensor)
    for i in range(3):
        for j in range(i + 1, 3):
            worst = max(worst, abs(inner_product(parts[i], parts[j])) / r2)
    worst = max(worst, norm(ricci(d.weyl)) / norm(R.tensor))
    again = decompose(d.weyl)
    worst = max(worst, abs(again.scal) / norm(R.tensor), norm(again.ric0) / norm(R.tensor))
    worst = max(worst, norm(again.weyl.tensor - d.weyl.tensor) / norm(R.tensor))
    return worst


def self_adjointness(rng, n):
    k = int(rng.integers(1, 5))
    R = random_algcurv(rng, n)
    T1, T2 = random_tensor(rng, n, k), random_tensor(rng, n, k)
    a = inner_product(ric_term_bruteforce(R, T1), T2)
    b = inner_product(T1, ric_term_bruteforce(R, T2))
    return abs(a - b) / max(abs(a), abs(b), 1.0)


def gaussian_routes(rng, n):
    """Flat space with Hess f = g: both weights, partial sum 1, equal operators."""
    g = metric(n)
    worst = 0.0
    for p in range(1, (n + 1) // 2):
        flat = AlgCurv.zero(n)
        a = weighted_curvature_theorem(flat, WeightSpec(g, p))
        b = weight_proposition(flat, mu_list(g), p)
        worst = max(worst, float(np.max(np.abs(curvature_operator_matrix(a) - curvature_operator_matrix(b)))))
        for weight in (WeightSpec(g, p), mu_list(g)):
            rep = check_vanishing(flat, weight, p)
            worst = max(worst, abs(rep.partial_sum - 1.0), 0.0 if rep.verdict == "vanishing" else 1.0)
    return worst


def _weyl(rng, n):
    return weyl_remark_check(random_symform(rng, n), random_weyl(rng, n), aux=random_algcurv(rng, n))


def weyl_quadratic(rng, n):
    return _weyl(rng, n).quadratic


def weyl_ricci_pairing(rng, n):
    return _weyl(rng, n).ricci_pairing


def weyl_ricci_tracefree(rng, n):
    return _weyl(rng, n).ricci_tracefree


def weyl_metric_pairing(rng, n):
    return _weyl(rng, n).metric_pairing


@dataclass(frozen=True)
class Check:
    name: str
    func: object
    tolerance: float
    min_dim: int = 3


CHECKS = [
    Check("kn_validates", kn_validates, 1e-12),
    Check("general_vs_oracle", general_vs_oracle, 1e-10),
    Check("sym2_vs_oracle", sym2_vs_oracle, 1e-10),
    Check("pform_vs_oracle", pform_vs_oracle, 1e-10),
    Check("curv_vs_oracle", curv_vs_oracle, 1e-10, min_dim=4),
    Check("bianchi_transposition_sum", bianchi_transposition, 1e-10),
    Check("sphere_form_eigenvalue", sphere_form_eigenvalue, 1e-12),
    Check("form_weight_identity", form_weight_identity, 1e-10),
    Check("sym2_weight_identity", sym2_weight_identity, 1e-10),
    Check("spectral_identity", spectral_identity, 1e-8),
    Check("mu_bound", mu_bound, 1e-10),
    Check("decomposition", decomposition, 1e-10),
    Check("self_adjointness", self_adjointness, 1e-10),
    Check("gaussian_routes", gaussian_routes, 1e-12),
    Check("weyl_quadratic", weyl_quadratic, 1e-9, min_dim=4),
    Check("weyl_ricci_pairing", weyl_ricci_pairing, 1e-9, min_dim=4),
    Check("weyl_ricci_tracefree", weyl_ricci_tracefree, 1e-9, min_dim=4),
    Check("weyl_metric_pairing", weyl_metric_pairing, 1e-12, min_dim=4),
]


def trial_rng(seed, name, n, trial):
    return np.random.default_rng([seed, zlib.crc32(name.encode()), n, trial])


@dataclass(frozen=True)
class CheckResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float
    passed: bool
    wall_time: float

    def to_dict(self, timing=False):
        out = {
            "name": self.name,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    dims: tuple
    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, timing=False):
        return {
            "seed": self.seed,
            "dims": list(self.dims),
            "passed": self.passed,
            "checks": [r.to_dict(timing) for r in self.results],
        }


def _run_check(check, trials, seed, dims, tol):
    start = time.perf_counter()
    worst, count = 0.0, 0
    for n in dims:
        if n < check.min_dim:
            continue
        for t in range(trials):
            worst = max(worst, float(check.func(trial_rng(seed, check.name, n, t), n)))
            count += 1
    tolerance = check.tolerance if tol is None else tol
    return CheckResult(
        name=check.name,
        trials=count,
        max_residual=worst,
        tolerance=tolerance,
        passed=worst <= tolerance,
        wall_time=time.perf_counter() - start,
    )


def run_suite(trials=100, seed=42, dims=range(3, 7), tol=None, jobs=1, checks=None) -> SuiteReport:
    """Run the verification battery.

    Args:
        trials: random instances per check and dimension.
        seed: master seed.
        dims: dimensions to test; checks skip dimensions below their minimum.
        tol: if given, replaces every check's own tolerance.
        jobs: worker threads; results are ordered by check regardless.
        checks: optional subset of check names.
    """
    dims = tuple(int(n) for n in dims)
    selected = [c for c in CHECKS if checks is None or c.name in checks]
    args = [(c, trials, seed, dims, tol) for c in selected]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda a: _run_check(*a), args))
    else:
        results = [_run_check(*a) for a in args]
    return SuiteReport(seed=seed, dims=dims, results=tuple(results))
