"""Dense multilinear algebra over an n-dimensional Euclidean space.

Everything is expressed in a fixed orthonormal basis ``e_1, ..., e_n``, so the
metric ``g`` is the identity matrix and a (0,k)-tensor is just a real array of
shape ``(n,) * k`` with ``T[a_1, ..., a_k] = T(e_{a_1}, ..., e_{a_k})``.

Slot arguments (``i``, ``j``) are 1-based, matching the ``X_1, ..., X_k``
notation for the arguments of a tensor. Array indices are 0-based as usual.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DegreeOutOfRange, DimensionMismatch, SlotIndexError

__all__ = [
    "as_tensor",
    "as_symform",
    "metric",
    "transpose_slots",
    "contract_with_form",
    "endo_action",
    "inner_product",
    "norm",
    "wedge_endo",
    "alternate",
    "PForm",
]


def as_tensor(T, n=None, order=None) -> np.ndarray:
    """Coerce ``T`` to a float64 array and check that it is a (0,k)-tensor."""
    arr = np.asarray(T, dtype=np.float64)
    if arr.ndim > 0 and len(set(arr.shape)) != 1:
        raise DimensionMismatch(f"tensor axes must all have the same length, got {arr.shape}")
    if n is not None and arr.ndim > 0 and arr.shape[0] != n:
        raise DimensionMismatch(f"expected dimension {n}, got {arr.shape[0]}")
    if order is not None and arr.ndim != order:
        raise DimensionMismatch(f"expected order {order}, got {arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("tensor components must be finite")
    return arr


def as_symform(matrix, n=None) -> np.ndarray:
    """Return the symmetric (0,2)-tensor of ``matrix``.

    Input is symmetrized on ingest, so the result is exactly symmetric.
    """
    m = as_tensor(matrix, n=n, order=2)
    return 0.5 * (m + m.T)


def metric(n: int) -> np.ndarray:
    """The metric ``g`` in the orthonormal basis, i.e. the identity."""
    if n < 1:
        raise DimensionMismatch("dimension must be positive")
    return np.eye(n)


def _check_slots(k, *slots):
    for s in slots:
        if not 1 <= s <= k:
            raise SlotIndexError(f"slot {s} out of range for a tensor of order {k}")


def transpose_slots(T, i: int, j: int) -> np.ndarray:
    """``T o tau_ij``: swap the i-th and j-th arguments of ``T``."""
    T = as_tensor(T)
    _check_slots(T.ndim, i, j)
    if i == j:
        raise SlotIndexError("transposition needs two distinct slots")
    return np.swapaxes(T, i - 1, j - 1).copy()


def contract_with_form(h, T, i: int, j: int) -> np.ndarray:
    """``c_ij(h (x) T)``: contract ``h`` against slots ``i`` and ``j`` of ``T``.

    ``result[...] = sum_{a,b} h[a, b] * T[..., a (slot i), ..., b (slot j), ...]``;
    the order drops by two and the remaining slots keep their relative order.
    """
    T = as_tensor(T)
    h = as_tensor(h, order=2)
    _check_slots(T.ndim, i, j)
    if i == j:
        raise SlotIndexError("contraction needs two distinct slots")
    if T.shape[0] != h.shape[0]:
        raise DimensionMismatch("form and tensor live in different dimensions")
    return np.tensordot(T, h, axes=([i - 1, j - 1], [0, 1]))


def _apply_to_slot(M, T, s):
    """``T(..., M e_a, ...)`` with ``M e_a`` in 0-based slot ``s``."""
    out = np.tensordot(M, T, axes=([0], [s]))  # new axis 0 is a
    return np.moveaxis(out, 0, s)


def endo_action(L, T) -> np.ndarray:
    """Derivation action of an endomorphism on a (0,k)-tensor.

    ``(LT)(X_1, ..., X_k) = - sum_i T(X_1, ..., L(X_i), ..., X_k)``

    ``L`` is given as a matrix acting on column vectors, ``L e_a = sum_w
    L[w, a] e_w``.
    """
    T = as_tensor(T)
    L = np.asarray(L, dtype=np.float64)
    if T.ndim < 1:
        raise DimensionMismatch("endomorphisms act on tensors of order >= 1")
    if L.shape != (T.shape[0], T.shape[0]):
        raise DimensionMismatch(f"endomorphism of shape {L.shape} cannot act on dimension {T.shape[0]}")
    out = np.zeros_like(T)
    for s in range(T.ndim):
        out -= _apply_to_slot(L, T, s)
    return out


def inner_product(T1, T2) -> float:
    """Frobenius pairing: sum over all indices of ``T1 * T2``."""
    a, b = as_tensor(T1), as_tensor(T2)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.vdot(a, b))


def norm(T) -> float:
    return float(np.linalg.norm(as_tensor(T).ravel()))


def wedge_endo(A, B) -> np.ndarray:
    """Skew endomorphism of the bivector ``A ^ B``.

    Convention: ``(A ^ B) C = g(A, C) B - g(B, C) A``. For basis vectors this
    sends ``e_i`` to ``e_j`` and ``e_j`` to ``-e_i`` under ``e_i ^ e_j``.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    return np.outer(B, A) - np.outer(A, B)


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(T) -> np.ndarray:
    """Antisymmetrize ``T`` with the ``1/k!`` normalization."""
    T = as_tensor(T)
    k = T.ndim
    if k < 2:
        return T.copy()
    out = np.zeros_like(T)
    for perm in itertools.permutations(range(k)):
        out += _perm_sign(perm) * np.transpose(T, perm)
    return out / math.factorial(k)


class PForm:
    """An alternating (0,p)-tensor.

    Any order-p array is accepted and alternated on construction, so the
    stored components always change sign under a swap of two slots.

    Besides the dense array, a p-form has a compact view: its values on the
    sorted multi-indices ``i_1 < ... < i_p`` in lexicographic order.
    """

    __slots__ = ("_components", "_n")

    def __init__(self, components, n=None, _alternating=False):
        arr = as_tensor(components, n=n)
        # _alternating: caller guarantees exact alternation, skip the k! sum
        arr = arr.copy() if _alternating else alternate(arr)
        arr.setflags(write=False)
        if arr.ndim == 0 and n is None:
            raise DimensionMismatch("a 0-form needs an explicit dimension n")
        self._components = arr
        self._n = int(n) if n is not None else arr.shape[0]

    @property
    def components(self) -> np.ndarray:
        return self._components

    @property
    def degree(self) -> int:
        return self._components.ndim

    @property
    def dim(self) -> int:
        return self._n

    @staticmethod
    def multi_indices(n, p):
        return list(itertools.combinations(range(n), p))

    def compact(self) -> np.ndarray:
        idx = self.multi_indices(self.dim, self.degree)
        return np.array([self._components[i] for i in idx])

    @classmethod
    def from_compact(cls, values, n, p) -> "PForm":
        idx = cls.multi_indices(n, p)
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (len(idx),):
            raise DimensionMismatch(f"expected {len(idx)} compact components, got {values.shape}")
        if p == 0:
            return cls(np.array(values[0]), n=n)
        dense = np.zeros((n,) * p)
        for v, multi in zip(values, idx):
            for perm in itertools.permutations(range(p)):
                dense[tuple(multi[q] for q in perm)] = _perm_sign(perm) * v
        return cls(dense, n=n, _alternating=True)

    @classmethod
    def basis(cls, n, indices) -> "PForm":
        """The form ``e^{i_1} ^ ... ^ e^{i_p}`` (0-based, strictly increasing indices)."""
        indices = tuple(indices)
        if list(indices) != sorted(set(indices)) or any(not 0 <= i < n for i in indices):
            raise DegreeOutOfRange(f"indices {indices} must be distinct, increasing, in range({n})")
        p = len(indices)
        values = np.zeros(math.comb(n, p))
        values[cls.multi_indices(n, p).index(indices)] = 1.0
        return cls.from_compact(values, n, p)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._components, dtype=dtype)

    def __add__(self, other):
        if isinstance(other, PForm):
            return PForm(self._components + other._components, n=self._n, _alternating=True)
        return PForm(self._components + np.asarray(other), n=self._n)

    def __mul__(self, c):
        return PForm(float(c) * self._components, n=self._n, _alternating=True)

    __rmul__ = __mul__

    def __neg__(self):
        return PForm(-self._components, n=self._n, _alternating=True)

    def __repr__(self):
        return f"PForm(n={self.dim}, p={self.degree})"
