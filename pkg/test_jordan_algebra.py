"""
Test Jordan Algebra
===================
Construction, products, spectral data and cone membership for every algebra kind.
"""
import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from jordan_algebra import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    AlgebraMismatchError,
    DomainError,
    Element,
    JordanAlgebraError,
    UnsupportedKindError,
    algebra_from_descriptor,
    combine,
    cone_membership,
    direct_sum,
    element_from_matrix,
    formal_reality_margin,
    frame_residuals,
    inverse,
    jordan_identity_residual,
    jordan_product,
    norm,
    make_algebra,
    quadratic_rep,
    random_element,
    random_frame,
    random_outside,
    random_state,
    spectral_decompose,
    sqrt,
    square,
    trace_inner_product,
    unit,
)

ALGEBRAS = [
    ("real", 2), ("real", 3), ("real", 4),
    ("complex", 2), ("complex", 3), ("complex", 4),
    ("quaternion", 2), ("quaternion", 3),
    ("spin", 2), ("spin", 4), ("spin", 8),
]


@pytest.mark.parametrize("kind,size,dim,rank", [
    ("real", 3, 6, 3),
    ("complex", 2, 4, 2),
    ("complex", 4, 16, 4),
    ("quaternion", 2, 6, 2),
    ("quaternion", 3, 15, 3),
    ("spin", 4, 5, 2),
])
def test_dimensions(kind, size, dim, rank):
    algebra = make_algebra(kind, size)
    assert algebra.dim == dim
    assert algebra.rank == rank


def test_kind_aliases_share_the_cache():
    assert make_algebra("ComplexHerm", 2) is make_algebra("complex", 2)
    assert make_algebra("quaternionic", 2) == make_algebra("quaternion", 2)


@pytest.mark.parametrize("kind,size", [("spin", 1), ("real", 0), ("complex", -1)])
def test_rejects_infeasible_sizes(kind, size):
    with pytest.raises(JordanAlgebraError):
        make_algebra(kind, size)


def test_rejects_unknown_kind():
    with pytest.raises(UnsupportedKindError):
        make_algebra("octonion", 3)


def test_mixing_algebras_is_an_error(rng):
    a = random_element(make_algebra("real", 2), rng)
    b = random_element(make_algebra("complex", 2), rng)
    with pytest.raises(AlgebraMismatchError):
        jordan_product(a, b)
    with pytest.raises(JordanAlgebraError):
        Element(make_algebra("real", 2), [1.0, 2.0])


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_unit_is_neutral(kind, size, rng):
    algebra = make_algebra(kind, size)
    a = random_element(algebra, rng)
    np.testing.assert_allclose(jordan_product(unit(algebra), a).coords, a.coords, atol=1e-12)


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_unit_trace_equals_rank(kind, size):
    algebra = make_algebra(kind, size)
    u = unit(algebra)
    assert trace_inner_product(u, u) == pytest.approx(algebra.rank)


@settings(deadline=None, max_examples=30)
@given(case=st.sampled_from(ALGEBRAS), draw=st.integers(min_value=0, max_value=2**32 - 1))
def test_jordan_identity(case, draw):
    algebra = make_algebra(*case)
    rng = np.random.default_rng(draw)
    a = random_element(algebra, rng)
    b = random_element(algebra, rng)
    assert jordan_identity_residual(a, b) <= 1e-9


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_formally_real(kind, size):
    assert formal_reality_margin(make_algebra(kind, size)) > 0


def test_spin_product():
    algebra = make_algebra("spin", 3)
    a = Element(algebra, [1.0, 2.0, 0.0, -1.0])
    b = Element(algebra, [0.5, 1.0, 1.0, 1.0])
    # (s, x)∘(t, y) = (st + x·y, sy + tx)
    expected = [0.5 + 2.0 + 0.0 - 1.0, 1.0 + 1.0, 1.0 + 0.0, 1.0 - 0.5]
    np.testing.assert_allclose(jordan_product(a, b).coords, expected)


def test_matrix_product_is_symmetrized(rng):
    algebra = make_algebra("complex", 3)
    a = random_element(algebra, rng)
    b = random_element(algebra, rng)
    A, B = a.matrix(), b.matrix()
    np.testing.assert_allclose(jordan_product(a, b).matrix(), 0.5 * (A @ B + B @ A), atol=1e-12)


@settings(deadline=None, max_examples=25)
@seed(7)
@given(case=st.sampled_from(ALGEBRAS), draw=st.integers(min_value=0, max_value=2**32 - 1))
def test_spectral_decomposition_reconstructs(case, draw):
    algebra = make_algebra(*case)
    a = random_element(algebra, np.random.default_rng(draw))
    spectral = spectral_decompose(a)
    assert len(spectral.frame) == algebra.rank
    assert np.all(np.diff(spectral.eigenvalues) <= 1e-12)
    assert spectral.is_valid(1e-9)


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_primitive_idempotents_have_unit_length(kind, size, rng):
    algebra = make_algebra(kind, size)
    for p in random_frame(algebra, rng):
        assert trace_inner_product(p, p) == pytest.approx(1.0, abs=1e-10)
        assert trace_inner_product(p, unit(algebra)) == pytest.approx(1.0, abs=1e-10)


def test_quaternionic_degenerate_spectrum(rng):
    algebra = make_algebra("quaternion", 3)
    frame = random_frame(algebra, rng)
    a = 2.0 * frame[0] + 2.0 * frame[1] - frame[2]
    spectral = spectral_decompose(a)
    np.testing.assert_allclose(spectral.eigenvalues, [2.0, 2.0, -1.0], atol=1e-10)
    assert max(frame_residuals(spectral.frame).values()) <= 1e-9


@pytest.mark.parametrize("gap_scale", [1.0 - 1e-6, 1.0, 1.0 + 1e-6])
def test_quaternionic_gap_at_the_tolerance(gap_scale, rng):
    algebra = make_algebra("quaternion", 3)
    tol = 1e-8
    for _ in range(40):
        a = combine(random_frame(algebra, rng), [1.0, 1.0 - tol * gap_scale, 0.3])
        spectral = spectral_decompose(a, tol)
        assert len(spectral.frame) == 3
        assert norm(spectral.reconstruct() - a) <= 1e-7
        assert max(frame_residuals(spectral.frame).values()) <= 1e-9


def test_spin_spectrum_of_scalar_multiple_of_unit():
    algebra = make_algebra("spin", 4)
    spectral = spectral_decompose(3.0 * unit(algebra))
    np.testing.assert_allclose(spectral.eigenvalues, [3.0, 3.0])
    assert spectral.is_valid()


def test_functional_calculus(rng):
    algebra = make_algebra("real", 3)
    a = square(random_element(algebra, rng)) + 0.5 * unit(algebra)
    root = sqrt(a)
    np.testing.assert_allclose(jordan_product(root, root).coords, a.coords, atol=1e-10)
    np.testing.assert_allclose(jordan_product(a, inverse(a)).coords, unit(algebra).coords, atol=1e-10)


def test_sqrt_and_inverse_domain_errors():
    algebra = make_algebra("complex", 2)
    negative = element_from_matrix(algebra, np.diag([1.0, -0.5]))
    with pytest.raises(DomainError) as info:
        sqrt(negative)
    assert info.value.eigenvalue == pytest.approx(-0.5)
    with pytest.raises(DomainError):
        inverse(element_from_matrix(algebra, np.diag([1.0, 0.0])))


def test_quadratic_representation_is_congruence(rng):
    algebra = make_algebra("complex", 3)
    c = random_element(algebra, rng)
    a = random_element(algebra, rng)
    C = c.matrix()
    np.testing.assert_allclose(quadratic_rep(c)(a).matrix(), C @ a.matrix() @ C, atol=1e-10)


def test_cone_membership_statuses(rng):
    algebra = make_algebra("complex", 2)
    assert cone_membership(unit(algebra)).status == INSIDE
    assert cone_membership(random_frame(algebra, rng)[0]).status == BOUNDARY

    a = element_from_matrix(algebra, np.diag([1.0, -0.1]))
    membership = cone_membership(a)
    assert membership.status == OUTSIDE
    assert membership.min_eigenvalue == pytest.approx(-0.1)
    np.testing.assert_allclose(membership.witness.matrix(), np.diag([0.0, 1.0]), atol=1e-12)
    assert trace_inner_product(a, membership.witness) == pytest.approx(-0.1)


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_random_outside_is_outside(kind, size, rng):
    algebra = make_algebra(kind, size)
    for _ in range(5):
        assert cone_membership(random_outside(algebra, rng)).status == OUTSIDE


@pytest.mark.parametrize("kind,size", [("complex", 3), ("quaternion", 2), ("quaternion", 3)])
def test_conjugation_is_an_automorphism(kind, size, rng):
    algebra = make_algebra(kind, size)
    C = algebra.conjugation
    a = random_element(algebra, rng)
    b = random_element(algebra, rng)
    image = C @ jordan_product(a, b).coords
    product = jordan_product(Element(algebra, C @ a.coords), Element(algebra, C @ b.coords))
    np.testing.assert_allclose(image, product.coords, atol=1e-12)
    np.testing.assert_allclose(C @ C, np.eye(algebra.dim), atol=1e-12)


def test_direct_sum(rng):
    algebra = direct_sum(make_algebra("real", 2), make_algebra("spin", 3))
    assert algebra.dim == 3 + 4
    assert algebra.rank == 4
    assert algebra_from_descriptor(algebra.descriptor()) is algebra
    a = random_element(algebra, rng)
    spectral = spectral_decompose(a)
    assert spectral.is_valid(1e-9)
    assert jordan_identity_residual(a, random_element(algebra, rng)) <= 1e-9


def test_classical_bit_as_direct_sum():
    algebra = direct_sum(make_algebra("real", 1), make_algebra("real", 1))
    a = Element(algebra, [0.25, 0.75])
    spectral = spectral_decompose(a)
    np.testing.assert_allclose(spectral.eigenvalues, [0.75, 0.25])


@pytest.mark.parametrize("kind,size", ALGEBRAS)
def test_random_state_has_unit_trace(kind, size, rng):
    algebra = make_algebra(kind, size)
    a = random_state(algebra, rng)
    assert trace_inner_product(a, unit(algebra)) == pytest.approx(1.0)
    assert cone_membership(a).status == INSIDE
    assert math.isfinite(float(spectral_decompose(a).eigenvalues.min()))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__]))
