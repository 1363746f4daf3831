"""Algebraic curvature tensors, their decomposition and curvature operator."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegreeOutOfRange,
    DimensionMismatch,
    DimensionTooSmall,
    EigenSolverFailure,
    SymmetryViolation,
)
from .tensor import as_symform, as_tensor, metric, wedge_endo

__all__ = [
    "AlgCurv",
    "validate",
    "symmetry_residuals",
    "curvature_project",
    "kulkarni_nomizu",
    "unit_sphere",
    "ricci",
    "scalar",
    "CurvDecomposition",
    "decompose",
    "bivector_basis",
    "curvature_operator_matrix",
    "CurvSpectrum",
    "spectrum",
    "ConditionReport",
    "partial_sum_verdict",
]

DEFAULT_VALIDATION_TOL = 1e-9


def symmetry_residuals(R):
    """Residual arrays of the three curvature symmetry families."""
    return (
        ("pair antisymmetry", R + R.transpose(1, 0, 2, 3)),
        ("pair exchange", R - R.transpose(2, 3, 0, 1)),
        ("first Bianchi", R + R.transpose(1, 2, 0, 3) + R.transpose(2, 0, 1, 3)),
    )


class AlgCurv:
    """An algebraic curvature tensor ``R(X, Y, Z, W)`` in an orthonormal basis.

    Use :func:`validate` to build one from untrusted data; the constructor
    checks symmetries only when ``check`` is true. Supports ``+``, ``-`` and
    scalar multiplication.
    """

    __slots__ = ("_tensor",)

    def __init__(self, tensor, check=True, tol=DEFAULT_VALIDATION_TOL):
        arr = as_tensor(tensor, order=4).copy()
        if check:
            _check_symmetries(arr, tol)
        arr.setflags(write=False)
        self._tensor = arr

    @property
    def tensor(self) -> np.ndarray:
        return self._tensor

    @property
    def n(self) -> int:
        return self._tensor.shape[0]

    @classmethod
    def zero(cls, n):
        return cls(np.zeros((n,) * 4), check=False)

    def _same_space(self, other):
        if not isinstance(other, AlgCurv):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")
        return other

    def __add__(self, other):
        other = self._same_space(other)
        if other is NotImplemented:
            return other
        return AlgCurv(self._tensor + other._tensor, check=False)

    def __sub__(self, other):
        other = self._same_space(other)
        if other is NotImplemented:
            return other
        return AlgCurv(self._tensor - other._tensor, check=False)

    def __mul__(self, c):
        return AlgCurv(float(c) * self._tensor, check=False)

    __rmul__ = __mul__

    def __neg__(self):
        return AlgCurv(-self._tensor, check=False)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._tensor, dtype=dtype)

    def __repr__(self):
        return f"AlgCurv(n={self.n})"


def _check_symmetries(R, tol):
    scale = float(np.max(np.abs(R))) if R.size else 0.0
    for name, resid in symmetry_residuals(R):
        worst = np.unravel_index(np.argmax(np.abs(resid)), resid.shape)
        mag = abs(resid[worst])
        if mag > tol * scale:
            raise SymmetryViolation(name, worst, mag)


def validate(candidate, tol=DEFAULT_VALIDATION_TOL) -> AlgCurv:
    """Check the curvature symmetries of an order-4 tensor.

    Args:
        candidate: array-like of shape ``(n, n, n, n)``.
        tol: allowed violation relative to the largest absolute entry.

    Returns:
        An :class:`AlgCurv` wrapping the input unchanged.

    Raises:
        SymmetryViolation: naming the failed identity, the worst index and
            the size of the violation.
    """
    return AlgCurv(candidate, check=True, tol=tol)


def curvature_project(T) -> AlgCurv:
    """Orthogonal projection of an arbitrary order-4 tensor onto curvature tensors.

    First averages over the order-8 group generated by the pair antisymmetries
    and the pair exchange, then removes the totally antisymmetric part with the
    Bianchi map.
    """
    T = as_tensor(T, order=4)
    sym = (
        T
        - T.transpose(1, 0, 2, 3)
        - T.transpose(0, 1, 3, 2)
        + T.transpose(1, 0, 3, 2)
    )
    sym = sym + sym.transpose(2, 3, 0, 1)
    sym /= 8.0
    bianchi = (sym + sym.transpose(1, 2, 0, 3) + sym.transpose(2, 0, 1, 3)) / 3.0
    return AlgCurv(sym - bianchi, check=False)


def kulkarni_nomizu(S1, S2) -> AlgCurv:
    """Kulkarni-Nomizu product of two symmetric (0,2)-tensors.

    ``(S1 KN S2)(X,Y,Z,W) = S1(X,Z) S2(Y,W) - S1(X,W) S2(Y,Z)
    + S1(Y,W) S2(X,Z) - S1(Y,Z) S2(X,W)``
    """
    a = as_symform(S1)
    b = as_symform(S2)
    if a.shape != b.shape:
        raise DimensionMismatch(f"forms of shapes {a.shape} and {b.shape}")
    xz_yw = np.einsum("xz,yw->xyzw", a, b)
    xw_yz = np.einsum("xw,yz->xyzw", a, b)
    yw_xz = np.einsum("yw,xz->xyzw", a, b)
    yz_xw = np.einsum("yz,xw->xyzw", a, b)
    return AlgCurv(xz_yw - xw_yz + yw_xz - yz_xw, check=False)


def unit_sphere(n) -> AlgCurv:
    """``I = 1/2 g KN g``, the curvature tensor of the round unit sphere."""
    g = metric(n)
    return 0.5 * kulkarni_nomizu(g, g)


def _curv(R):
    return R.tensor if isinstance(R, AlgCurv) else validate(R).tensor


def ricci(R) -> np.ndarray:
    """``Ric(X, Z) = sum_a R(X, e_a, Z, e_a)``."""
    Rt = _curv(R)
    ric = np.einsum("xaza->xz", Rt)
    return 0.5 * (ric + ric.T)


def scalar(R) -> float:
    return float(np.trace(ricci(R)))


@dataclass(frozen=True)
class CurvDecomposition:
    """The three O(n)-irreducible pieces of an algebraic curvature tensor.

    ``R = scal / (2 n (n-1)) g KN g + 1/(n-2) ric0 KN g + weyl``
    """

    scal: float
    ric0: np.ndarray
    weyl: AlgCurv

    @property
    def n(self):
        return self.weyl.n

    def scalar_part(self) -> AlgCurv:
        n = self.n
        g = metric(n)
        return (self.scal / (2.0 * (n - 1) * n)) * kulkarni_nomizu(g, g)

    def ricci_part(self) -> AlgCurv:
        return (1.0 / (self.n - 2)) * kulkarni_nomizu(self.ric0, metric(self.n))

    def reconstruct(self) -> AlgCurv:
        return self.scalar_part() + self.ricci_part() + self.weyl


def decompose(R) -> CurvDecomposition:
    """Split ``R`` into scalar, trace-free Ricci and Weyl parts.

    Raises:
        DimensionTooSmall: for n < 3, where the Ricci coefficient 1/(n-2)
            is undefined.
    """
    R = R if isinstance(R, AlgCurv) else validate(R)
    n = R.n
    if n < 3:
        raise DimensionTooSmall(f"decomposition needs n >= 3, got n = {n}")
    g = metric(n)
    ric = ricci(R)
    scal = float(np.trace(ric))
    ric0 = ric - (scal / n) * g
    weyl = (
        R
        - (scal / (2.0 * (n - 1) * n)) * kulkarni_nomizu(g, g)
        - (1.0 / (n - 2)) * kulkarni_nomizu(ric0, g)
    )
    return CurvDecomposition(scal=scal, ric0=ric0, weyl=weyl)


def bivector_basis(n):
    """Index pairs ``(i, j)``, ``i < j``, in lexicographic order (0-based)."""
    return list(itertools.combinations(range(n), 2))


def curvature_operator_matrix(R) -> np.ndarray:
    """Matrix of the curvature operator on bivectors.

    In the orthonormal basis ``e_i ^ e_j`` (``i < j``, lexicographic), the
    entry for ``(ij, kl)`` is ``R(e_i, e_j, e_k, e_l)``. With this convention
    the unit sphere has every eigenvalue equal to 1.
    """
    Rt = _curv(R)
    pairs = bivector_basis(Rt.shape[0])
    rows = np.array([p[0] for p in pairs], dtype=int)
    cols = np.array([p[1] for p in pairs], dtype=int)
    M = Rt[rows[:, None], cols[:, None], rows[None, :], cols[None, :]]
    return 0.5 * (M + M.T)


@dataclass(frozen=True)
class CurvSpectrum:
    """Ascending eigenvalues of the curvature operator and eigenbivectors.

    ``eigenvectors[:, a]`` holds the coordinates of the a-th eigenbivector in
    :func:`bivector_basis`; :attr:`eigenbivectors` gives the same vectors as
    skew endomorphisms.
    """

    n: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def eigenbivectors(self) -> list:
        pairs = bivector_basis(self.n)
        g = metric(self.n)
        units = [wedge_endo(g[i], g[j]) for i, j in pairs]
        return [
            sum(c * u for c, u in zip(self.eigenvectors[:, a], units))
            for a in range(len(pairs))
        ]

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.eigenvalues)

    def operator(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


def spectrum(R) -> CurvSpectrum:
    """Eigen-decomposition of the curvature operator of ``R``."""
    Rt = _curv(R)
    M = curvature_operator_matrix(Rt)
    try:
        vals, vecs = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverFailure(str(exc)) from exc
    return CurvSpectrum(n=Rt.shape[0], eigenvalues=vals, eigenvectors=vecs)


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of an eigenvalue partial-sum test.

    ``verdict`` is "positive", "nonnegative" or "fails" for a bare
    l-nonnegativity test and "vanishing", "parallel-only" or "fails" when the
    report comes from :func:`curvlab.bochner.check_vanishing`.
    """

    l: int
    partial_sum: float
    verdict: str
    tolerance: float
    p: int | None = None
    weight_route: str | None = None
    strict: bool = False
    eigenvalues: tuple = field(default=(), repr=False)

    @property
    def holds(self) -> bool:
        if self.verdict == "fails":
            return False
        if self.strict:
            return self.verdict in ("positive", "vanishing")
        return True

    def to_dict(self) -> dict:
        out = {
            "l": self.l,
            "partial_sum": self.partial_sum,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
        }
        if self.p is not None:
            out = {"p": self.p, **out, "weight_route": self.weight_route, "strict": self.strict}
        return out


def partial_sum_verdict(spec: CurvSpectrum, l: int, tol: float = 1e-10) -> ConditionReport:
    """Decide l-positivity / l-nonnegativity of a curvature spectrum.

    ``s = lambda_1 + ... + lambda_l`` is "positive" when ``s > tol``,
    "nonnegative" when ``-tol <= s <= tol`` and "fails" when ``s < -tol``.
    """
    N = len(spec.eigenvalues)
    if not 1 <= l <= N:
        raise DegreeOutOfRange(f"l must lie in [1, {N}], got {l}")
    s = float(np.sum(spec.eigenvalues[:l]))
    if s > tol:
        verdict = "positive"
    elif s >= -tol:
        verdict = "nonnegative"
    else:
        verdict = "fails"
    return ConditionReport(
        l=l, partial_sum=s, verdict=verdict, tolerance=tol,
        eigenvalues=tuple(float(v) for v in spec.eigenvalues),
    )
