"""
Test Probabilistic Models
=========================
Model construction, states and effects, bipartite states, conditioning maps,
sharpness and spectrality.
"""
import numpy as np
import pytest

from conjugates import make_conjugate
from jordan_algebra import LinearMap, element_from_matrix, make_algebra, random_frame, random_state
from model_library import get_builtin_descriptor
from probabilistic_models import (
    BipartiteState,
    Effect,
    InvalidDeltaError,
    ModelError,
    State,
    ZeroProbabilityError,
    build_model,
    classical_model,
    conditional,
    conditioning_map,
    cone_preservation,
    dual_cone_contains,
    effect_cone_generators,
    effect_preservation,
    effect_value,
    is_nonsingular,
    is_valid_state,
    jordan_model,
    jordan_realization,
    marginal,
    maximally_mixed,
    model_spectrality_check,
    outcome_effect,
    polytopic_model,
    product_state,
    sharpness_check,
    spectrality_decompose,
    state_from_element,
    unit_effect,
    validate_bipartite,
    zero_effect,
)


@pytest.fixture
def gbit():
    return build_model(get_builtin_descriptor("gbit"))


@pytest.fixture
def qubit():
    return jordan_model(make_algebra("complex", 2), name="qubit")


def _qubit_state(qubit, diagonal):
    return state_from_element(qubit, element_from_matrix(qubit.algebra, np.diag(diagonal)))


def test_classical_model():
    model = build_model({"backend": "classical", "outcomes": ["a", "b", "c"]})
    assert model.rank == 3
    assert is_valid_state(model, [0.2, 0.3, 0.5])
    assert not is_valid_state(model, [0.6, 0.6, -0.2])


def test_classical_jordan_realization():
    bit3 = classical_model(["a", "b", "c"], name="trit")
    realized = jordan_realization(bit3)
    assert realized.is_jordan
    assert realized.name == "trit"
    assert realized.rank == realized.dim == 3
    np.testing.assert_allclose(make_conjugate(realized).eta.form, np.eye(3) / 3, atol=1e-12)
    assert jordan_realization(realized) is realized


def test_polytopic_models_have_no_jordan_realization(gbit):
    with pytest.raises(ModelError):
        jordan_realization(gbit)


def test_qubit_model(qubit):
    assert qubit.rank == 2
    assert qubit.dim == 4
    assert build_model({"backend": "jordan", "kind": "complex", "size": 2}).same_as(qubit)


def test_square_bit_is_a_valid_model(gbit):
    assert gbit.rank == 2
    assert len(gbit.tests) == 2
    for vertex in gbit.vertices:
        assert is_valid_state(gbit, vertex)
    assert is_valid_state(gbit, gbit.vertices.mean(axis=0))
    assert not is_valid_state(gbit, [1.2, -0.2, 0.5, 0.5])


def test_rejects_non_uniform_tests():
    with pytest.raises(ModelError, match="non-uniform"):
        polytopic_model(["a", "b", "c"], [["a", "b"], ["c"]], [[0.5, 0.5, 1.0]])


def test_rejects_vertex_that_is_not_a_probability_weight():
    with pytest.raises(ModelError, match="probability weight"):
        polytopic_model(["a", "b"], [["a", "b"]], [[0.7, 0.7]])


def test_rejects_unsupported_outcome():
    with pytest.raises(ModelError, match="no supporting state"):
        polytopic_model(["a", "b"], [["a", "b"]], [[1.0, 0.0]])


def test_rejects_unknown_backend():
    with pytest.raises(ModelError):
        build_model({"backend": "octonionic"})


def test_effect_values(qubit):
    plus = np.full((2, 2), 0.5)
    alpha = state_from_element(qubit, element_from_matrix(qubit.algebra, plus))
    p0 = element_from_matrix(qubit.algebra, np.diag([1.0, 0.0]))
    assert effect_value(unit_effect(qubit), alpha) == pytest.approx(1.0)
    assert effect_value(outcome_effect(qubit, p0), alpha) == pytest.approx(0.5)
    assert effect_value(zero_effect(qubit), alpha) == 0.0


def test_effects_lie_between_zero_and_unit(gbit, qubit):
    with pytest.raises(ModelError, match="0 <= e <= u"):
        Effect(qubit, 3.0 * qubit.unit_vector)
    with pytest.raises(ModelError, match="0 <= e <= u"):
        Effect(gbit, [-1.0, 0.0, 0.0, 0.0])
    half = Effect(qubit, 0.5 * qubit.unit_vector)
    assert effect_value(half, maximally_mixed(qubit)) == pytest.approx(0.5)


def test_maximally_mixed_is_uniform(gbit, qubit, rng):
    rho = maximally_mixed(gbit)
    np.testing.assert_allclose(rho.vector, [0.5] * 4)
    for p in random_frame(qubit.algebra, rng):
        assert maximally_mixed(qubit).probability(p) == pytest.approx(0.5)


def test_nonsingular_detection(gbit, qubit):
    assert is_nonsingular(maximally_mixed(gbit))
    assert not is_nonsingular(State(gbit, gbit.vertices[0]))
    assert is_nonsingular(_qubit_state(qubit, [0.7, 0.3]))
    assert not is_nonsingular(_qubit_state(qubit, [1.0, 0.0]))


def test_product_state_is_valid(gbit, qubit, rng):
    alpha = State(qubit, random_state(qubit.algebra, rng).coords)
    omega = product_state(alpha, maximally_mixed(gbit))
    report = validate_bipartite(omega, rng)
    assert report.passed
    np.testing.assert_allclose(marginal(omega, "A").vector, alpha.vector, atol=1e-12)
    for y in range(4):
        np.testing.assert_allclose(conditional(omega, y, side="A").vector, alpha.vector, atol=1e-12)


def test_signaling_table_fails_marginals(gbit):
    bit = classical_model(["a0", "a1"])
    form = np.outer([0.5, 0.5], maximally_mixed(gbit).vector)
    perturbation = 0.05
    form[0, 0] += perturbation
    form[1, 0] -= perturbation
    report = validate_bipartite(BipartiteState(bit, gbit, form))
    assert not report.passed
    assert report.violations["marginals"] >= perturbation - 1e-12


def test_eta_on_qubit_is_valid(qubit, rng):
    eta = make_conjugate(qubit).eta
    report = validate_bipartite(eta, rng, samples=6)
    assert report.passed, report.violations
    np.testing.assert_allclose(marginal(eta, "A").vector, maximally_mixed(qubit).vector, atol=1e-12)


def test_classical_correlated_conditionals():
    bit = classical_model(["0", "1"])
    omega = BipartiteState(bit, bit, [[0.5, 0.0], [0.0, 0.5]])
    np.testing.assert_allclose(conditional(omega, "0", side="B").vector, [1.0, 0.0])
    np.testing.assert_allclose(marginal(omega, "A").vector, [0.5, 0.5])


def test_conditioning_on_impossible_outcome():
    bit = classical_model(["0", "1"])
    omega = BipartiteState(bit, bit, [[1.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ZeroProbabilityError):
        conditional(omega, "1", side="B")


def test_conditioning_map_of_product_state(gbit, qubit, rng):
    alpha = State(qubit, random_state(qubit.algebra, rng).coords)
    beta = State(gbit, gbit.vertices[1])
    omega = product_state(alpha, beta)
    hat = conditioning_map(omega, rng)
    e = outcome_effect(qubit, random_frame(qubit.algebra, rng)[0])
    np.testing.assert_allclose(hat.apply(e.vector).vector, effect_value(e, alpha) * beta.vector, atol=1e-12)
    assert hat.positive
    assert hat.reproduction_residual <= 1e-12


def test_conditioning_map_of_classical_table():
    bit = classical_model(["0", "1"])
    table = np.array([[0.4, 0.1], [0.1, 0.4]])
    hat = conditioning_map(BipartiteState(bit, bit, table))
    np.testing.assert_allclose(hat.matrix, table.T)
    assert hat.conditioning_residual <= 1e-12


def test_conditioning_map_of_eta(qubit, rng):
    conjugate = make_conjugate(qubit)
    hat = conditioning_map(conjugate.eta, rng)
    np.testing.assert_allclose(hat.matrix, conjugate.conjugation / 2, atol=1e-12)
    assert hat.positive
    assert hat.reproduction_residual <= 1e-12


@pytest.mark.parametrize("kind,size", [("real", 3), ("complex", 3), ("quaternion", 2), ("spin", 5)])
def test_jordan_models_are_sharp(kind, size, rng):
    report = sharpness_check(jordan_model(make_algebra(kind, size)), rng)
    assert report.sharp
    assert report.worst_residual <= 1e-9


def test_square_bit_is_not_sharp(gbit):
    report = sharpness_check(gbit)
    assert not report.sharp
    assert {entry["outcome"] for entry in report.offending} == {"x0", "x1", "y0", "y1"}
    for entry in report.offending:
        assert entry["face_vertices"] == 2
        assert entry["face_dimension"] == 1


def test_classical_model_is_sharp():
    assert sharpness_check(classical_model(["a", "b", "c"])).sharp


def test_spectrality_of_mixed_state():
    model = jordan_model(make_algebra("real", 3))
    result = spectrality_decompose(model, maximally_mixed(model))
    assert result.success
    np.testing.assert_allclose(result.weights, [1 / 3] * 3, atol=1e-12)


def test_spectrality_of_diagonal_qubit_state(qubit):
    result = spectrality_decompose(qubit, _qubit_state(qubit, [0.7, 0.3]))
    assert result.success
    np.testing.assert_allclose(result.weights, [0.7, 0.3], atol=1e-12)


def test_square_bit_centroid_is_not_spectral(gbit):
    result = spectrality_decompose(gbit, maximally_mixed(gbit))
    assert not result.success
    assert result.residual >= 0.25


def test_invalid_delta_is_rejected(gbit):
    with pytest.raises(InvalidDeltaError):
        spectrality_decompose(gbit, maximally_mixed(gbit), delta={0: gbit.vertices[2]})


def test_jordan_models_take_delta_as_a_callable(qubit):
    with pytest.raises(InvalidDeltaError):
        spectrality_decompose(qubit, maximally_mixed(qubit), delta={0: maximally_mixed(qubit)})


def test_square_bit_is_not_spectral_for_any_delta(gbit):
    report = model_spectrality_check(gbit)
    assert not report.spectral
    assert report.delta_families_tried == 2 ** 4


def test_classical_model_is_spectral():
    report = model_spectrality_check(classical_model(["a", "b", "c"]))
    assert report.spectral
    assert report.witness == {"a": 0, "b": 1, "c": 2}


def test_jordan_models_are_spectral(rng):
    report = model_spectrality_check(jordan_model(make_algebra("quaternion", 2)), rng, samples=20, tol=1e-9)
    assert report.spectral


def test_effect_cones_of_square_bit(gbit):
    generators = effect_cone_generators(gbit)
    assert len(generators) == 4
    for e in generators:
        assert dual_cone_contains(gbit, e.vector)
    assert dual_cone_contains(gbit, [1.0, 0.0, 1.0, 0.0])
    assert not dual_cone_contains(gbit, [1.0, 0.0, -1.0, 0.0])


def test_processes(qubit, rng):
    identity = LinearMap.identity(qubit.algebra)
    assert cone_preservation(identity, rng, samples=5) >= -1e-12
    assert effect_preservation(identity) == pytest.approx(0.0, abs=1e-12)
    doubled = identity.scaled(2.0)
    assert effect_preservation(doubled) < 0


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__]))
