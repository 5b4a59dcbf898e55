"""
Test Reconstruction
===================
Self-dualizing inner product, self-duality, product recovery, correlating
dilations and bits.
"""
import numpy as np
import pytest

from conjugates import UnsupportedBackendError, make_conjugate
from jordan_algebra import (
    jordan_product,
    make_algebra,
    random_element,
    random_frame,
    random_state,
    trace_inner_product,
    unit,
)
from model_library import get_builtin_descriptor
from probabilistic_models import (
    BipartiteState,
    State,
    build_model,
    classical_model,
    jordan_model,
    marginal,
    maximally_mixed,
    product_state,
)
from reconstruction import (
    NON_QUANTUM_LABEL,
    UNHALVED_NOTE,
    RankError,
    bit_check,
    classify_bit,
    correlating_check,
    correlation_dilation,
    eta_inner_product,
    recover_jordan_product,
    recovered_product,
    recovered_square,
    self_duality_check,
    unique_spectral_rep,
)

JORDAN_CASES = [("real", 3), ("complex", 2), ("complex", 3), ("quaternion", 2), ("spin", 3)]


def _conjugate(kind, size):
    return make_conjugate(jordan_model(make_algebra(kind, size)))


@pytest.mark.parametrize("kind,size", JORDAN_CASES)
def test_eta_inner_product(kind, size, rng):
    conjugate = _conjugate(kind, size)
    form, report = eta_inner_product(conjugate, rng, samples=10)
    assert report.passed, report
    assert form.is_valid
    u = unit(conjugate.algebra)
    assert report.unit_norm == pytest.approx(trace_inner_product(u, u) / conjugate.model.rank)


@pytest.mark.parametrize("kind,size", JORDAN_CASES)
def test_self_duality(kind, size, rng):
    form, _ = eta_inner_product(_conjugate(kind, size), rng, samples=5)
    report = self_duality_check(form, rng, samples=40)
    assert report.passed, report
    assert report.converse_failures == 0
    assert report.worst_witness_value < 0


def test_unique_spectral_rep_merges_level_sets(rng):
    algebra = make_algebra("complex", 3)
    frame = random_frame(algebra, rng)
    a = 2.0 * frame[0] + 2.0 * frame[1] - frame[2]
    representation = unique_spectral_rep(a)
    np.testing.assert_allclose(representation.values, [2.0, -1.0], atol=1e-10)
    assert representation.level_sets == ((0, 1), (2,))
    assert representation.residual() <= 1e-10
    witness = representation.witness(0)
    assert trace_inner_product(witness, unit(algebra)) == pytest.approx(1.0)
    assert trace_inner_product(witness, representation.effects[0]) == pytest.approx(1.0)


@pytest.mark.parametrize("kind,size", JORDAN_CASES)
def test_recovered_product_matches_native_product(kind, size, rng):
    algebra = make_algebra(kind, size)
    a = random_element(algebra, rng)
    b = random_element(algebra, rng)
    np.testing.assert_allclose(recovered_square(a).coords, jordan_product(a, a).coords, atol=1e-9)
    np.testing.assert_allclose(recovered_product(a, b).coords, jordan_product(a, b).coords, atol=1e-9)


@pytest.mark.parametrize("kind,size", [("real", 2), ("complex", 2), ("quaternion", 2), ("spin", 3)])
def test_recover_jordan_product(kind, size, rng):
    conjugate = _conjugate(kind, size)
    table, report = recover_jordan_product(conjugate, rng, samples=10)
    assert report.passed, report
    dim = conjugate.algebra.dim
    assert table.shape == (dim, dim, dim)
    assert UNHALVED_NOTE in report.notes
    assert report.details["unhalved_unit_defect"] > 0


@pytest.mark.parametrize("kind,size", JORDAN_CASES)
def test_correlation_dilation(kind, size, rng):
    conjugate = _conjugate(kind, size)
    model = conjugate.model
    alpha = State(model, random_state(model.algebra, rng).coords)
    omega = correlation_dilation(conjugate, alpha)
    np.testing.assert_allclose(marginal(omega, "A").vector, alpha.vector, atol=1e-10)

    representation = unique_spectral_rep(alpha.element)
    frame = representation.frame
    result = correlating_check(omega, frame, [conjugate.bar(z) for z in frame])
    assert result.success, result
    assert result.bijection == {i: i for i in range(len(frame))}


def test_product_of_mixed_states_is_not_correlating(rng):
    model = jordan_model(make_algebra("complex", 2))
    rho = maximally_mixed(model)
    frame = random_frame(model.algebra, rng)
    result = correlating_check(product_state(rho, rho), frame, frame)
    assert not result.success
    assert result.reason == "support is not a partial bijection"


def test_classical_identity_table_is_correlating():
    bit = classical_model(["0", "1"])
    omega = BipartiteState(bit, bit, [[0.3, 0.0], [0.0, 0.7]])
    result = correlating_check(omega, ["0", "1"], ["1", "0"])
    assert result.success
    assert result.bijection == {0: 1, 1: 0}


@pytest.mark.parametrize("kind,size,d,label", [
    ("real", 2, 2, "real bit"),
    ("complex", 2, 3, "complex bit"),
    ("quaternion", 2, 5, "quaternionic bit"),
    ("spin", 4, 4, NON_QUANTUM_LABEL),
])
def test_classify_bit(kind, size, d, label, rng):
    classification = classify_bit(jordan_model(make_algebra(kind, size)), rng, samples=20)
    assert classification.d == d
    assert classification.label == label
    assert classification.passed


def test_classify_bit_rejects_other_models():
    with pytest.raises(RankError):
        classify_bit(jordan_model(make_algebra("complex", 3)))
    with pytest.raises(UnsupportedBackendError):
        classify_bit(classical_model(["0", "1"]))


def test_bit_check(rng):
    assert bit_check(jordan_model(make_algebra("complex", 2)), rng, samples=10).is_bit
    assert bit_check(classical_model(["0", "1"]), rng, samples=10).is_bit
    gbit = bit_check(build_model(get_builtin_descriptor("gbit")), rng, samples=10)
    assert not gbit.is_bit
    assert gbit.worst_residual > 0.01
    trit = bit_check(jordan_model(make_algebra("complex", 3)), rng)
    assert not trit.is_bit
    assert trit.rank == 3


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__]))
