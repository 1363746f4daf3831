import itertools
import math

import numpy as np
import pytest

from curvlab import (
    AlgCurv,
    CurvSpectrum,
    curvature_operator_matrix,
    curvature_project,
    decompose,
    inner_product,
    kulkarni_nomizu,
    metric,
    norm,
    partial_sum_verdict,
    ricci,
    scalar,
    spectrum,
    unit_sphere,
    validate,
)
from curvlab.curvature import symmetry_residuals
from curvlab.errors import (
    DegreeOutOfRange,
    DimensionMismatch,
    DimensionTooSmall,
    SymmetryViolation,
)
from curvlab.gallery import random_algcurv, random_symform, random_tracefree

from oracles import curvature_projection_via_slots, jacobi_eigenvalues, kn_loops, ricci_loops


# --------------------------------------------------------------- validate

@pytest.mark.parametrize("n", range(2, 9))
def test_gg_validates(n):
    g = metric(n)
    validate(kn_loops(g, g), tol=1e-12)


def test_single_entry_fails():
    T = np.zeros((3, 3, 3, 3))
    T[0, 1, 0, 1] = 1.0
    with pytest.raises(SymmetryViolation) as info:
        validate(T)
    assert info.value.magnitude > 0.5


def test_validate_returns_input_unchanged(rng):
    T = curvature_projection_via_slots(rng.standard_normal((4,) * 4))
    R = validate(T)
    np.testing.assert_array_equal(R.tensor, T)


def test_validate_rejects_wrong_order():
    with pytest.raises(DimensionMismatch):
        validate(np.zeros((3, 3, 3)))


def test_bianchi_violation_is_named():
    # pair symmetries hold but the cyclic sum does not
    n = 4
    T = np.zeros((n,) * 4)
    for a, b, c, d in [(0, 1, 2, 3), (2, 3, 0, 1)]:
        T[a, b, c, d] = T[b, a, d, c] = 1.0
        T[b, a, c, d] = T[a, b, d, c] = -1.0
    with pytest.raises(SymmetryViolation) as info:
        validate(T)
    assert "bianchi" in info.value.identity.lower()


@pytest.mark.parametrize("n", [3, 4, 6])
def test_projection_matches_slot_oracle(rng, n):
    T = rng.standard_normal((n,) * 4)
    P = curvature_project(T).tensor
    np.testing.assert_allclose(P, curvature_projection_via_slots(T), atol=1e-14)
    for _, res in symmetry_residuals(P):
        assert np.max(np.abs(res)) <= 1e-12 * np.max(np.abs(P))


def test_projection_is_idempotent(rng):
    R = random_algcurv(rng, 5)
    np.testing.assert_allclose(curvature_project(R.tensor).tensor, R.tensor, atol=1e-14)


def test_algcurv_is_read_only(rng):
    R = random_algcurv(rng, 4)
    with pytest.raises(ValueError):
        R.tensor[0, 0, 0, 0] = 1.0


def test_algcurv_arithmetic(rng):
    A, B = random_algcurv(rng, 4), random_algcurv(rng, 4)
    np.testing.assert_allclose((A + 2.0 * B - A).tensor, 2.0 * B.tensor, atol=1e-14)
    np.testing.assert_array_equal((-A).tensor, -A.tensor)
    with pytest.raises(DimensionMismatch):
        A + random_algcurv(rng, 3)


# ------------------------------------------------------- ricci and scalar

@pytest.mark.parametrize("n", range(3, 9))
def test_ricci_of_sphere(n):
    I = unit_sphere(n)
    np.testing.assert_allclose(ricci(I), (n - 1) * metric(n), atol=1e-14)
    np.testing.assert_allclose(ricci(I), ricci_loops(I.tensor), atol=1e-14)
    assert scalar(I) == pytest.approx(n * (n - 1), abs=1e-12)
    g = metric(n)
    assert scalar(kulkarni_nomizu(g, g)) == pytest.approx(2 * n * (n - 1), abs=1e-12)


@pytest.mark.parametrize("n", range(3, 9))
def test_ricci_of_kn_with_metric(rng, n):
    h = random_symform(rng, n)
    expected = (n - 2) * h + np.trace(h) * metric(n)
    R = kulkarni_nomizu(h, metric(n))
    np.testing.assert_allclose(ricci(R), expected, atol=1e-13)
    np.testing.assert_allclose(ricci_loops(R.tensor), expected, atol=1e-13)


def test_ricci_is_symmetric(rng):
    Ric = ricci(random_algcurv(rng, 6))
    np.testing.assert_array_equal(Ric, Ric.T)


# -------------------------------------------------------------- decompose

@pytest.mark.parametrize("n", range(3, 8))
def test_decompose_sphere(n):
    d = decompose(unit_sphere(n))
    assert d.scal == pytest.approx(n * (n - 1))
    np.testing.assert_allclose(d.ric0, 0, atol=1e-13)
    np.testing.assert_allclose(d.weyl.tensor, 0, atol=1e-13)


@pytest.mark.parametrize("n", range(3, 8))
def test_decompose_tracefree_kn(rng, n):
    h0 = random_tracefree(rng, n)
    d = decompose(kulkarni_nomizu(h0, metric(n)))
    assert abs(d.scal) <= 1e-12
    np.testing.assert_allclose(d.ric0, (n - 2) * h0, atol=1e-12)
    np.testing.assert_allclose(d.weyl.tensor, 0, atol=1e-12)


def test_decompose_three_dims_has_no_weyl(rng):
    for _ in range(20):
        d = decompose(random_algcurv(rng, 3))
        assert norm(d.weyl.tensor) <= 1e-13


@pytest.mark.parametrize("n", range(3, 9))
def test_decompose_properties(rng, n):
    for _ in range(1000 // 6):
        R = random_algcurv(rng, n)
        d = decompose(R)
        parts = [d.scalar_part().tensor, d.ricci_part().tensor, d.weyl.tensor]
        scale = norm(R.tensor)
        assert norm(sum(parts) - R.tensor) <= 1e-10 * scale
        for a, b in itertools.combinations(parts, 2):
            assert abs(inner_product(a, b)) <= 1e-10 * scale**2
        assert abs(np.trace(d.ric0)) <= 1e-12 * scale
        assert norm(ricci(d.weyl)) <= 1e-10 * scale


def test_decompose_is_idempotent_on_weyl(rng):
    W = decompose(random_algcurv(rng, 6)).weyl
    d = decompose(W)
    assert abs(d.scal) <= 1e-12
    np.testing.assert_allclose(d.ric0, 0, atol=1e-12)
    np.testing.assert_allclose(d.weyl.tensor, W.tensor, atol=1e-13)


def test_decompose_rejects_n2():
    with pytest.raises(DimensionTooSmall):
        decompose(unit_sphere(2))


# ------------------------------------------------------- operator matrix

@pytest.mark.parametrize("n", range(2, 8))
def test_operator_of_sphere_is_identity(n):
    N = math.comb(n, 2)
    g = metric(n)
    np.testing.assert_allclose(curvature_operator_matrix(unit_sphere(n)), np.eye(N), atol=1e-15)
    np.testing.assert_allclose(curvature_operator_matrix(kulkarni_nomizu(g, g)), 2 * np.eye(N), atol=1e-15)
    np.testing.assert_allclose(spectrum(-unit_sphere(n)).eigenvalues, -np.ones(N), atol=1e-14)


def test_operator_entries_follow_lexicographic_pairs(rng):
    R = random_algcurv(rng, 4).tensor
    M = curvature_operator_matrix(R)
    pairs = list(itertools.combinations(range(4), 2))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            assert M[a, b] == pytest.approx(R[i, j, k, l], abs=1e-15)


# --------------------------------------------------------------- spectrum

@pytest.mark.parametrize("n", range(3, 8))
def test_spectrum_matches_jacobi(rng, n):
    R = random_algcurv(rng, n)
    M = curvature_operator_matrix(R)
    spec = spectrum(R)
    np.testing.assert_allclose(spec.eigenvalues, jacobi_eigenvalues(M), atol=1e-11 * np.abs(M).max())
    assert np.all(np.diff(spec.eigenvalues) >= 0)


@pytest.mark.parametrize("n", range(3, 8))
def test_spectrum_consistency(rng, n):
    R = random_algcurv(rng, n)
    M = curvature_operator_matrix(R)
    spec = spectrum(R)
    assert np.sum(spec.eigenvalues) == pytest.approx(np.trace(M), rel=1e-10, abs=1e-12)
    V = spec.eigenvectors
    np.testing.assert_allclose(V.T @ V, np.eye(len(V)), atol=1e-10)
    np.testing.assert_allclose(spec.operator(), M, atol=1e-8 * np.abs(M).max())


def test_eigenbivectors_are_orthonormal_skew(rng):
    spec = spectrum(random_algcurv(rng, 4))
    X = spec.eigenbivectors
    assert len(X) == 6
    for a, b in itertools.product(range(6), repeat=2):
        np.testing.assert_allclose(X[a] + X[a].T, 0, atol=1e-15)
        # the bivector inner product is half the Frobenius pairing
        assert 0.5 * inner_product(X[a], X[b]) == pytest.approx(float(a == b), abs=1e-10)


def test_spectrum_of_kn_diagonal():
    mu = np.array([-1.0, 0.5, 2.0, 3.25, 5.0])
    spec = spectrum(kulkarni_nomizu(np.diag(mu), metric(5)))
    expected = sorted(mu[i] + mu[j] for i, j in itertools.combinations(range(5), 2))
    np.testing.assert_allclose(spec.eigenvalues, expected, atol=1e-14)


def test_spectrum_of_zero():
    spec = spectrum(AlgCurv.zero(4))
    np.testing.assert_array_equal(spec.eigenvalues, np.zeros(6))


def test_n2_spectrum_is_scalar():
    spec = spectrum(3.0 * unit_sphere(2))
    np.testing.assert_allclose(spec.eigenvalues, [3.0])


# ---------------------------------------------------- partial_sum_verdict

@pytest.mark.parametrize("n", [3, 4, 7])
def test_sphere_is_positive(n):
    rep = partial_sum_verdict(spectrum(unit_sphere(n)), n - 1)
    assert rep.partial_sum == pytest.approx(n - 1)
    assert rep.verdict == "positive"
    assert rep.holds


def test_zero_is_nonnegative():
    spec = spectrum(AlgCurv.zero(4))
    for l in range(1, 7):
        rep = partial_sum_verdict(spec, l)
        assert rep.partial_sum == 0.0 and rep.verdict == "nonnegative"


def test_negative_sphere_fails():
    rep = partial_sum_verdict(spectrum(-unit_sphere(4)), 1)
    assert rep.partial_sum == pytest.approx(-1.0)
    assert rep.verdict == "fails"
    assert not rep.holds


def test_verdict_tolerance_band():
    spec = CurvSpectrum(n=3, eigenvalues=np.array([-1e-11, 2e-11, 1.0]), eigenvectors=np.eye(3))
    assert partial_sum_verdict(spec, 1).verdict == "nonnegative"
    assert partial_sum_verdict(spec, 1, tol=1e-12).verdict == "fails"
    assert partial_sum_verdict(spec, 2, tol=1e-12).verdict == "positive"


@pytest.mark.parametrize("l", [0, 7])
def test_l_out_of_range(l):
    with pytest.raises(DegreeOutOfRange):
        partial_sum_verdict(spectrum(unit_sphere(4)), l)


def test_partial_sum_monotonicity(rng):
    for _ in range(200):
        n = int(rng.integers(3, 7))
        spec = spectrum(random_algcurv(rng, n))
        lam = spec.eigenvalues
        s = [partial_sum_verdict(spec, l).partial_sum for l in range(1, len(lam) + 1)]
        for l in range(1, len(lam)):
            assert (s[l] >= s[l - 1]) == (lam[l] >= 0)
