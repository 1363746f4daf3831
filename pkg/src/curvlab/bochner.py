"""Lichnerowicz curvature terms and weighted curvature conditions.

The curvature term of the Lichnerowicz Laplacian on (0,k)-tensors is

    Ric_R(T)(X_1, ..., X_k) = sum_i sum_a (R(X_i, e_a) T)(X_1, ..., e_a, ..., X_k)

with ``e_a`` in the i-th slot and ``R(X, Y)`` acting by the derivation
action. :func:`ric_term_bruteforce` evaluates this double sum literally; the
``ric_term_hg_*`` functions are closed forms for ``R = h KN g`` and are
checked against it.

Weights: a smooth metric measure space contributes its Hessian ``Hess f``
(or more generally a symmetric ``S``) at a point. For forms of degree
``p < n/2`` the weight ``h = Hess f/(n-2p) - Laplacian f/(2(n-p)(n-2p)) g``
is absorbed into ``R + h KN g``; in every degree ``p <= n/2`` the weight
``(mu_1 + ... + mu_p)/(2p(n-p)) g KN g`` built from the ascending Hessian
eigenvalues works as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curvature import (
    AlgCurv,
    ConditionReport,
    kulkarni_nomizu,
    partial_sum_verdict,
    ricci,
    spectrum,
    validate,
)
from .errors import DegreeOutOfRange, DimensionMismatch, MiddleDegree, NotTraceFree, NotWeyl
from .tensor import (
    PForm,
    as_symform,
    as_tensor,
    contract_with_form,
    endo_action,
    inner_product,
    metric,
    norm,
    transpose_slots,
)

__all__ = [
    "ric_term_bruteforce",
    "hg_transposition_sum",
    "ric_term_hg_general",
    "ric_term_hg_sym2",
    "sym2_quadratic_form",
    "ric_term_hg_pform",
    "ric_term_hg_curv",
    "WeightSpec",
    "mu_list",
    "weight_theorem",
    "weighted_curvature_theorem",
    "weight_proposition",
    "check_vanishing",
    "identity_form_weight",
    "identity_sym2_weight",
    "spectral_weitzenboeck",
    "mu_bound_check",
    "WeylRemarkResiduals",
    "weyl_remark_check",
]


def _curv_array(R):
    if isinstance(R, AlgCurv):
        return R.tensor
    return validate(R).tensor


def _array(T):
    return T.components if isinstance(T, PForm) else as_tensor(T)


def _same_dim(n, T):
    if T.ndim < 1:
        raise DimensionMismatch("curvature terms act on tensors of order >= 1")
    if T.shape[0] != n:
        raise DimensionMismatch(f"tensor of dimension {T.shape[0]} against curvature of dimension {n}")


def ric_term_bruteforce(R, T) -> np.ndarray:
    """Curvature term ``Ric_R(T)`` by direct evaluation of the double sum.

    ``R(e_x, e_j)`` is the endomorphism with ``g(R(X, Y) Z, W) = R(X, Y, Z, W)``
    and acts by the derivation rule, so each (slot i, acted-on slot s) pair
    contributes

    * ``s == i``: ``-sum_{j,w} R(e_{a_i}, e_j, e_j, e_w) T(.., e_w, ..)``
    * ``s != i``: ``-sum_{j,w} R(e_{a_i}, e_j, e_{a_s}, e_w) T(.., e_j (slot i), .., e_w (slot s), ..)``

    No curvature identity is used, so this serves as the oracle for the
    closed forms.
    """
    Rt = _curv_array(R)
    T = _array(T)
    n, k = Rt.shape[0], T.ndim
    _same_dim(n, T)
    out = np.zeros_like(T)
    diag = np.einsum("xjjw->xw", Rt)
    for i in range(k):
        # slot i is both evaluated at e_j and acted on
        moved = np.tensordot(T, diag, axes=([i], [1]))  # (rest, x)
        out -= np.moveaxis(moved, -1, i)
        for s in range(k):
            if s == i:
                continue
            # contract T's slots (i, s) against R's (j, w); R's (x, z) land in (i, s)
            moved = np.tensordot(T, Rt, axes=([i, s], [1, 3]))  # (rest, x, z)
            out -= np.moveaxis(moved, [-2, -1], [i, s])
    return out


def _insert_form(F, C, i, j):
    """Tensor ``F(X_i, X_j) * C(remaining X's)``; slots 1-based."""
    out = np.multiply.outer(F, C)
    return np.moveaxis(out, [0, 1], [i - 1, j - 1])


def _apply_to_slot(M, T, s):
    out = np.tensordot(M, T, axes=([0], [s - 1]))
    return np.moveaxis(out, 0, s - 1)


def hg_transposition_sum(h, T) -> np.ndarray:
    """``sum_{i != j} (T o tau_ij)(X_1, ..., H(X_i), ..., X_k)``.

    Vanishes identically when ``T`` is an algebraic curvature tensor.
    """
    T = _array(T)
    H = as_symform(h, n=T.shape[0])
    k = T.ndim
    out = np.zeros_like(T)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                out += _apply_to_slot(H, transpose_slots(T, i, j), i)
    return out


def ric_term_hg_general(h, T) -> np.ndarray:
    """Closed form of ``Ric_{h KN g}(T)`` valid for any (0,k)-tensor ``T``.

    ``2 sum_{i!=j} (T o tau_ij)(.., H X_i, ..)
    - sum_{i!=j} g(X_i, X_j) c_ij(h (x) T)(..)
    - sum_{i!=j} h(X_i, X_j) c_ij(g (x) T)(..)
    - (n-2) HT + k tr(h) T``
    """
    T = _array(T)
    if T.ndim < 1:
        raise DimensionMismatch("curvature terms act on tensors of order >= 1")
    n, k = T.shape[0], T.ndim
    h = as_symform(h, n=n)
    g = metric(n)
    out = 2.0 * hg_transposition_sum(h, T)
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            lo, hi = min(i, j), max(i, j)
            out -= _insert_form(g, contract_with_form(h, T, lo, hi), lo, hi)
            out -= _insert_form(h, contract_with_form(g, T, lo, hi), lo, hi)
    out -= (n - 2) * endo_action(h, T)
    out += k * np.trace(h) * T
    return out


def ric_term_hg_sym2(h, T) -> np.ndarray:
    """``Ric_{h KN g}(T) = -n HT - 2<T,h> g - 2 tr(T) h + 2 tr(h) T`` on Sym^2."""
    T = as_symform(T)
    n = T.shape[0]
    h = as_symform(h, n=n)
    return (
        -n * endo_action(h, T)
        - 2.0 * inner_product(T, h) * metric(n)
        - 2.0 * np.trace(T) * h
        + 2.0 * np.trace(h) * T
    )


def sym2_quadratic_form(h, T) -> float:
    """``g(Ric_{h KN g}(T), T) = -n g(HT, T) - 4 tr(T)<T,h> + 2 tr(h)|T|^2``."""
    T = as_symform(T)
    h = as_symform(h, n=T.shape[0])
    return (
        -T.shape[0] * inner_product(endo_action(h, T), T)
        - 4.0 * np.trace(T) * inner_product(T, h)
        + 2.0 * np.trace(h) * inner_product(T, T)
    )


def ric_term_hg_pform(h, omega) -> PForm:
    """``Ric_{h KN g}(omega) = -(n-2p) H omega + p tr(h) omega``."""
    if not isinstance(omega, PForm):
        omega = PForm(omega)
    n, p = omega.dim, omega.degree
    if not 1 <= p <= n:
        raise DegreeOutOfRange(f"degree {p} outside [1, {n}]")
    h = as_symform(h, n=n)
    w = omega.components
    # a derivation action maps alternating tensors to alternating tensors
    return PForm(-(n - 2 * p) * endo_action(h, w) + p * np.trace(h) * w, n=n, _alternating=True)


def ric_term_hg_curv(h, R) -> np.ndarray:
    """``Ric_{h KN g}(R) = -2 h KN Ric - 2 g KN c_24(h (x) R) - (n-2) HR + 4 tr(h) R``."""
    Rt = _curv_array(R)
    n = Rt.shape[0]
    h = as_symform(h, n=n)
    g = metric(n)
    c24 = contract_with_form(h, Rt, 2, 4)
    return (
        -2.0 * kulkarni_nomizu(h, ricci(Rt)).tensor
        - 2.0 * kulkarni_nomizu(g, c24).tensor
        - (n - 2) * endo_action(h, Rt)
        + 4.0 * np.trace(h) * Rt
    )


@dataclass(frozen=True)
class WeightSpec:
    """Pointwise data of the weight function: its Hessian and Laplacian.

    ``laplacian_f`` defaults to the trace of ``hess_f``; an explicit value must
    agree with that trace to ``rtol``.
    """

    hess_f: np.ndarray
    p: int
    laplacian_f: float | None = None
    rtol: float = 1e-12

    def __post_init__(self):
        hess = as_symform(self.hess_f)
        object.__setattr__(self, "hess_f", hess)
        tr = float(np.trace(hess))
        if self.laplacian_f is None:
            object.__setattr__(self, "laplacian_f", tr)
        else:
            lap = float(self.laplacian_f)
            if abs(lap - tr) > self.rtol * max(abs(tr), abs(lap)):
                raise ValueError(
                    f"laplacian_f = {lap!r} disagrees with tr(hess_f) = {tr!r}"
                )
            object.__setattr__(self, "laplacian_f", lap)
        n = hess.shape[0]
        if not 1 <= self.p <= n // 2:
            raise DegreeOutOfRange(f"p must lie in [1, {n // 2}] for n = {n}, got {self.p}")

    @property
    def n(self) -> int:
        return self.hess_f.shape[0]


def mu_list(S) -> np.ndarray:
    """Ascending eigenvalues of a symmetric form."""
    return np.linalg.eigvalsh(as_symform(S))


def weight_theorem(ws: WeightSpec) -> np.ndarray:
    """``h = Hess f/(n-2p) - Laplacian f/(2(n-p)(n-2p)) g``.

    Raises:
        MiddleDegree: when ``n = 2p``; use :func:`weight_proposition`.
    """
    n, p = ws.n, ws.p
    if 2 * p == n:
        raise MiddleDegree(
            f"the Hessian weight is undefined in the middle degree p = n/2 = {p}; "
            "use the eigenvalue (mu) weight instead"
        )
    if not 1 <= p < n / 2:
        raise DegreeOutOfRange(f"p must satisfy 1 <= p < n/2, got p = {p}, n = {n}")
    return ws.hess_f / (n - 2 * p) - ws.laplacian_f / (2.0 * (n - p) * (n - 2 * p)) * metric(n)


def weighted_curvature_theorem(R, ws: WeightSpec) -> AlgCurv:
    """``R + h KN g`` with ``h`` from :func:`weight_theorem`."""
    R = R if isinstance(R, AlgCurv) else validate(R)
    if R.n != ws.n:
        raise DimensionMismatch(f"curvature in dimension {R.n}, weight in dimension {ws.n}")
    return R + kulkarni_nomizu(weight_theorem(ws), metric(R.n))


def weight_proposition(R, mu, p: int) -> AlgCurv:
    """``R + (mu_1 + ... + mu_p)/(2p(n-p)) g KN g`` for ``1 <= p <= n/2``.

    ``mu`` holds all n eigenvalues of the Hessian in ascending order.
    """
    R = R if isinstance(R, AlgCurv) else validate(R)
    n = R.n
    mu = np.asarray(mu, dtype=np.float64)
    if mu.shape != (n,):
        raise DimensionMismatch(f"expected {n} eigenvalues, got {mu.shape}")
    if np.any(np.diff(mu) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    if not 1 <= p <= n // 2:
        raise DegreeOutOfRange(f"p must lie in [1, {n // 2}] for n = {n}, got {p}")
    coeff = float(np.sum(mu[:p])) / (2.0 * p * (n - p))
    g = metric(n)
    return R + coeff * kulkarni_nomizu(g, g)


_FORM_VERDICTS = {"positive": "vanishing", "nonnegative": "parallel-only", "fails": "fails"}


def check_vanishing(R, weight=None, p=None, strict=False, tol=1e-10) -> ConditionReport:
    """Test the weighted eigenvalue condition for harmonic p-forms.

    Builds the weighted curvature tensor and sums its ``n - p`` lowest
    curvature-operator eigenvalues. A sum above ``tol`` gives "vanishing",
    a sum within ``tol`` of zero gives "parallel-only", anything below gives
    "fails". Failure of the condition says nothing about the forms themselves.

    Args:
        R: curvature tensor at the point.
        weight: a :class:`WeightSpec` (Hessian route), a sequence of ascending
            Hessian eigenvalues (eigenvalue route), or None for ``f = 0``.
        p: form degree; defaults to ``weight.p`` for a WeightSpec.
        strict: whether the caller requires the strict (vanishing) conclusion.
            Only affects :attr:`ConditionReport.holds`.
        tol: absolute tolerance on the partial sum.
    """
    R = R if isinstance(R, AlgCurv) else validate(R)
    n = R.n
    if isinstance(weight, WeightSpec):
        if p is None:
            p = weight.p
        elif p != weight.p:
            weight = WeightSpec(weight.hess_f, p, weight.laplacian_f, weight.rtol)
        weighted = weighted_curvature_theorem(R, weight)
        route = "theorem"
    elif weight is not None:
        if p is None:
            raise ValueError("p is required with an eigenvalue weight")
        weighted = weight_proposition(R, weight, p)
        route = "proposition"
    else:
        if p is None or not 1 <= p <= n // 2:
            raise DegreeOutOfRange(f"p must lie in [1, {n // 2}] for n = {n}, got {p}")
        weighted = R
        route = "unweighted"
    base = partial_sum_verdict(spectrum(weighted), n - p, tol)
    return ConditionReport(
        l=base.l,
        partial_sum=base.partial_sum,
        verdict=_FORM_VERDICTS[base.verdict],
        tolerance=tol,
        p=p,
        weight_route=route,
        strict=bool(strict),
        eigenvalues=base.eigenvalues,
    )


def _as_pform(omega):
    return omega if isinstance(omega, PForm) else PForm(omega)


def identity_form_weight(S, omega):
    """Both sides of ``g(Ric_{h KN g} omega, omega) = -g(S omega, omega)``.

    ``h`` is ``S/(n-2p) - tr(S)/(2(n-p)(n-2p)) g`` and ``S omega`` is the
    derivation action. Returns ``(lhs, rhs)``.
    """
    omega = _as_pform(omega)
    n, p = omega.dim, omega.degree
    S = as_symform(S, n=n)
    h = weight_theorem(WeightSpec(S, p))
    w = omega.components
    lhs = inner_product(ric_term_hg_pform(h, omega).components, w)
    rhs = -inner_product(endo_action(S, w), w)
    return lhs, rhs


def identity_sym2_weight(S, T, rtol=1e-10):
    """Both sides of ``g(Ric_{h KN g} T, T) = -g(ST, T)`` for trace-free ``T``.

    Here ``h = S/n - tr(S)/(2 n^2) g``.

    Raises:
        NotTraceFree: if ``|tr T| > rtol * |T|``.
    """
    T = as_symform(T)
    n = T.shape[0]
    S = as_symform(S, n=n)
    if abs(np.trace(T)) > rtol * norm(T):
        raise NotTraceFree(f"tr(T) = {np.trace(T):.3e} is not zero")
    h = S / n - np.trace(S) / (2.0 * n * n) * metric(n)
    return sym2_quadratic_form(h, T), -inner_product(endo_action(S, T), T)


def spectral_weitzenboeck(R, omega):
    """``g(Ric_R omega, omega)`` directly and as ``sum_a lambda_a |Xi_a omega|^2``.

    Returns ``(direct, spectral)``.
    """
    omega = _as_pform(omega)
    w = omega.components
    direct = inner_product(ric_term_bruteforce(R, w), w)
    spec = spectrum(R)
    spectral = sum(
        lam * float(np.sum(endo_action(xi, w) ** 2))
        for lam, xi in zip(spec.eigenvalues, spec.eigenbivectors)
    )
    return direct, float(spectral)


def mu_bound_check(S, omega):
    """``-g(S omega, omega)`` and its lower bound ``(mu_1 + ... + mu_p)|omega|^2``."""
    omega = _as_pform(omega)
    w = omega.components
    S = as_symform(S, n=omega.dim)
    lhs = -inner_product(endo_action(S, w), w)
    bound = float(np.sum(mu_list(S)[: omega.degree])) * inner_product(w, w)
    return lhs, bound


@dataclass(frozen=True)
class WeylRemarkResiduals:
    """Residuals of the Weyl identities for ``Ric_{h KN g}(W)``.

    ``quadratic``, ``ricci_pairing`` and ``ricci_tracefree`` are relative to
    the natural size of the terms (``|h| |W|^2`` or ``|h| |W| |Ric0|``);
    ``metric_pairing`` is the absolute value of ``g(Ric_{h KN g}(W), g KN g)``.
    ``ricci_pairing_value`` is the raw left side of the Ricci pairing.
    """

    quadratic: float
    ricci_pairing: float
    metric_pairing: float
    ricci_tracefree: float = 0.0
    ricci_pairing_value: float = 0.0

    def max(self):
        return max(self.quadratic, self.ricci_pairing, self.metric_pairing, self.ricci_tracefree)


def _rel(diff, scale):
    return abs(diff) / scale if scale > 0 else abs(diff)


def weyl_remark_check(h, W, aux=None, seed=0, tol=1e-9) -> WeylRemarkResiduals:
    """Evaluate the Weyl identities for ``Ric_{h KN g}(W)``.

    * quadratic: ``g(Ric(W), W) = -(n-2) g(HW, W) + 4 tr(h)|W|^2``
    * ricci_pairing: ``g(Ric(W), g KN Ric0) = -8(n-2)<c_24(h (x) W), Ric>``
      for the Ricci tensor of ``aux``
    * ricci_tracefree: ``<c_24(h (x) W), Ric> = <c_24(h0 (x) W), Ric0>``
    * metric_pairing: ``g(Ric(W), g KN g) = 0``

    ``Ric(W)`` is evaluated by brute force. ``aux`` defaults to a random
    curvature tensor drawn from ``seed``.

    The ricci_pairing identity does not hold in general: the ``(n-2) HW``
    term contributes ``+8(n-2)<c_24(h (x) W), Ric0>`` and cancels the right
    side, so the left side is identically zero. The residual is reported
    as stated and ``ricci_pairing_value`` exposes the left side.

    Raises:
        NotWeyl: if ``|ricci(W)| > tol * |W|``.
    """
    Wt = _curv_array(W)
    n = Wt.shape[0]
    h = as_symform(h, n=n)
    g = metric(n)
    ric_w = norm(ricci(Wt))
    if ric_w > tol * norm(Wt):
        raise NotWeyl(f"Ricci contraction of norm {ric_w:.3e} is not zero")
    if aux is None:
        from .gallery import random_algcurv

        aux = random_algcurv(np.random.default_rng(seed), n)
    ric = ricci(aux)
    ric0 = ric - np.trace(ric) / n * g
    h0 = h - np.trace(h) / n * g

    rw = ric_term_bruteforce(kulkarni_nomizu(h, g), Wt)
    w2 = inner_product(Wt, Wt)
    hn, wn = norm(h), math.sqrt(w2)

    q_lhs = inner_product(rw, Wt)
    q_rhs = -(n - 2) * inner_product(endo_action(h, Wt), Wt) + 4.0 * np.trace(h) * w2

    r_lhs = inner_product(rw, kulkarni_nomizu(g, ric0).tensor)
    r_mid = -8.0 * (n - 2) * inner_product(contract_with_form(h, Wt, 2, 4), ric)
    r_rhs = -8.0 * (n - 2) * inner_product(contract_with_form(h0, Wt, 2, 4), ric0)
    scale = hn * wn * norm(ric0)

    return WeylRemarkResiduals(
        quadratic=float(_rel(q_lhs - q_rhs, hn * w2)),
        ricci_pairing=float(_rel(r_lhs - r_mid, scale)),
        metric_pairing=float(abs(inner_product(rw, kulkarni_nomizu(g, g).tensor))),
        ricci_tracefree=float(_rel(r_mid - r_rhs, scale)),
        ricci_pairing_value=float(r_lhs),
    )
