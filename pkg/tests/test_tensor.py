import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import (
    PForm,
    contract_with_form,
    endo_action,
    inner_product,
    kulkarni_nomizu,
    metric,
    transpose_slots,
    validate,
    wedge_endo,
)
from curvlab.errors import DimensionMismatch, SlotIndexError
from curvlab.gallery import random_pform, random_symform

from oracles import kn_loops, ricci_loops


# -------------------------------------------------------- transpose_slots

def test_transpose_is_involution(rng):
    T = rng.standard_normal((3, 3, 3))
    np.testing.assert_array_equal(transpose_slots(transpose_slots(T, 1, 2), 1, 2), T)


def test_transpose_negates_forms(rng):
    w = random_pform(rng, 4, 3).components
    for i, j in itertools.combinations(range(1, 4), 2):
        np.testing.assert_array_equal(transpose_slots(w, i, j), -w)


def test_transpose_relabels_single_entry():
    T = np.zeros((3, 3, 3))
    T[0, 1, 2] = 5.0
    out = transpose_slots(T, 1, 2)
    assert out[1, 0, 2] == 5.0
    assert np.count_nonzero(out) == 1


def test_transpose_is_isometry(rng):
    a, b = rng.standard_normal((2, 4, 4, 4))
    assert inner_product(transpose_slots(a, 1, 3), transpose_slots(b, 1, 3)) == pytest.approx(inner_product(a, b))


@pytest.mark.parametrize("slots", [(0, 1), (1, 4), (2, 2)])
def test_transpose_rejects_bad_slots(slots):
    with pytest.raises(SlotIndexError):
        transpose_slots(np.zeros((3, 3, 3)), *slots)


# ----------------------------------------------------- contract_with_form

def test_ricci_contraction_of_sphere():
    g = metric(3)
    I = 0.5 * kn_loops(g, g)
    np.testing.assert_allclose(contract_with_form(g, I, 2, 4), 2 * g, atol=1e-15)
    np.testing.assert_allclose(contract_with_form(g, I, 2, 4), ricci_loops(I), atol=1e-15)


def test_first_pair_contraction_vanishes(rng):
    from curvlab.gallery import random_algcurv

    R = random_algcurv(rng, 5).tensor
    np.testing.assert_allclose(contract_with_form(metric(5), R, 1, 2), 0, atol=1e-14)


def test_contraction_is_trace():
    h = np.diag([1.0, 2.0])
    assert float(contract_with_form(h, metric(2), 1, 2)) == 3.0


def test_contraction_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        contract_with_form(np.eye(2), np.zeros((3, 3, 3)), 1, 2)


# ------------------------------------------------------------ endo_action

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_identity_acts_by_minus_k(rng, k):
    T = rng.standard_normal((3,) * k)
    np.testing.assert_allclose(endo_action(np.eye(3), T), -k * T, atol=1e-14)


def test_skew_kills_metric(rng):
    A = rng.standard_normal((4, 4))
    np.testing.assert_allclose(endo_action(A - A.T, metric(4)), 0, atol=1e-14)


def test_diagonal_on_basis_form():
    mu = np.array([0.5, -1.0, 2.0, 3.5, 7.0])
    w = PForm.basis(5, (0, 2, 3))
    out = endo_action(np.diag(mu), w.components)
    np.testing.assert_allclose(out, -(0.5 + 2.0 + 3.5) * w.components, atol=1e-14)


def test_derivation_on_rank_one(rng):
    n = 4
    L = rng.standard_normal((n, n))
    u, v, z = rng.standard_normal((3, n))
    T = np.einsum("a,b,c->abc", u, v, z)
    # (LT)(X, Y, Z) = -(L^T u)(X) v(Y) z(Z) - ...
    expected = -(
        np.einsum("a,b,c->abc", L.T @ u, v, z)
        + np.einsum("a,b,c->abc", u, L.T @ v, z)
        + np.einsum("a,b,c->abc", u, v, L.T @ z)
    )
    np.testing.assert_allclose(endo_action(L, T), expected, atol=1e-13)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(2, 6), p=st.integers(1, 6), seed=st.integers(0, 2**32 - 1))
def test_skew_preserves_norm(n, p, seed):
    p = min(p, n)
    r = np.random.default_rng(seed)
    A = r.standard_normal((n, n))
    w = random_pform(r, n, p).components
    val = inner_product(endo_action(A - A.T, w), w)
    assert abs(val) <= 1e-12 * max(inner_product(w, w), 1.0)


def test_endo_action_shape_error():
    with pytest.raises(DimensionMismatch):
        endo_action(np.eye(2), np.zeros((3, 3)))


# -------------------------------------------------------- kulkarni_nomizu

def test_kn_matches_loops(rng):
    a, b = random_symform(rng, 4), random_symform(rng, 4)
    np.testing.assert_allclose(kulkarni_nomizu(a, b).tensor, kn_loops(a, b), atol=1e-14)


def test_kn_values():
    g = metric(4)
    gg = kulkarni_nomizu(g, g).tensor
    assert gg[0, 1, 0, 1] == 2.0
    for i, j in itertools.permutations(range(4), 2):
        assert 0.5 * gg[i, j, i, j] == 1.0
    mu = np.array([1.5, -2.0, 0.25, 4.0])
    hg = kulkarni_nomizu(np.diag(mu), g).tensor
    for i, j in itertools.permutations(range(4), 2):
        assert hg[i, j, i, j] == pytest.approx(mu[i] + mu[j])


def test_kn_symmetric_in_arguments(rng):
    a, b = random_symform(rng, 5), random_symform(rng, 5)
    np.testing.assert_allclose(kulkarni_nomizu(a, b).tensor, kulkarni_nomizu(b, a).tensor, atol=1e-15)


@pytest.mark.parametrize("n", range(3, 9))
def test_kn_always_validates(rng, n):
    for _ in range(1000 // 6):
        S = kulkarni_nomizu(random_symform(rng, n), random_symform(rng, n)).tensor
        validate(S, tol=1e-12)


def test_kn_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        kulkarni_nomizu(np.eye(2), np.eye(3))


# ---------------------------------------------------------- inner_product

def test_inner_product_values(rng):
    g = metric(4)
    assert inner_product(g, g) == 4.0
    T = random_symform(rng, 4)
    assert inner_product(T, g) == pytest.approx(np.trace(T))
    # full Frobenius sum over all n**4 indices: 8 n (n - 1), 96 for n = 4
    gg = kn_loops(g, g)
    assert float(np.sum(gg * gg)) == 96.0
    assert inner_product(kulkarni_nomizu(g, g).tensor, kulkarni_nomizu(g, g).tensor) == 96.0


def test_inner_product_shape_error():
    with pytest.raises(DimensionMismatch):
        inner_product(np.eye(3), np.eye(4))


# ------------------------------------------------------------------ forms

def test_pform_alternates_on_ingest(rng):
    w = PForm(rng.standard_normal((4, 4, 4)))
    for i, j in itertools.combinations(range(1, 4), 2):
        np.testing.assert_allclose(transpose_slots(w.components, i, j), -w.components, atol=1e-15)


def test_pform_alternating_input_unchanged(rng):
    w = random_pform(rng, 5, 3)
    np.testing.assert_allclose(PForm(w.components).components, w.components, atol=1e-15)


def test_compact_round_trip(rng):
    vals = rng.standard_normal(10)
    w = PForm.from_compact(vals, 5, 2)
    np.testing.assert_array_equal(w.compact(), vals)
    assert w.degree == 2 and w.dim == 5


def test_zero_form():
    w = PForm.from_compact([3.0], 4, 0)
    assert w.degree == 0 and w.dim == 4


def test_wedge_endo_convention():
    e = np.eye(3)
    X = wedge_endo(e[0], e[1])
    np.testing.assert_array_equal(X @ e[0], e[1])
    np.testing.assert_array_equal(X @ e[1], -e[0])
    np.testing.assert_array_equal(X @ e[2], 0 * e[2])
    np.testing.assert_array_equal(X + X.T, np.zeros((3, 3)))
