"""
Verification Suites
===================
Named batteries of checks, each producing `schemas.CheckRecord`s:
- model validation, sharpness, spectrality, conjugates, self-duality, filters
- the lemma1 / lemma2 / thm1 / thm2 / thm3 pipelines
- the square-bit counterexample and the full report battery

Every check draws from its own generator seeded by (seed, check name), so
results do not depend on which other checks ran or in what order.
"""
import math
import zlib
from typing import Callable, Dict, List, Optional

import numpy as np

from composites import (
    conjugate_functoriality_check,
    dagger_adjoint,
    dagger_check,
    epr_joint_state,
    local_tomography_check,
    pullback,
    quantum_composite,
    snake_check,
    trivial_model,
)
from config import DEFAULT_TOL, default_samples
from conjugates import (
    UnsupportedBackendError,
    correlation_residual,
    epr_check,
    filter_homogeneity,
    filter_preparation_spectrality,
    filter_residuals,
    filter_symmetry_check,
    homogeneity_transport,
    make_conjugate,
    make_filter,
    matrix_congruence,
    order_automorphism_check,
    p_reversibility_check,
    prepare_state,
)
from jordan_algebra import (
    LinearMap,
    formal_reality_margin,
    jordan_identity_residual,
    make_algebra,
    normalize_kind,
    quadratic_rep,
    random_element,
    random_frame,
    random_interior,
    random_state,
    spectral_decompose,
    unit,
)
from model_library import get_builtin_descriptor
from probabilistic_models import (
    CLASSICAL,
    Model,
    State,
    build_model,
    default_delta,
    jordan_model,
    jordan_realization,
    marginal,
    maximally_mixed,
    model_spectrality_check,
    sharpness_check,
    spectrality_decompose,
    state_violation,
    validate_bipartite,
)
from reconstruction import (
    bit_check,
    classify_bit,
    correlating_check,
    correlation_dilation,
    eta_inner_product,
    recover_jordan_product,
    self_duality_check,
    unique_spectral_rep,
)
from schemas import CheckRecord

# Residuals that blow up are clamped so reports stay valid JSON
RESIDUAL_CEILING = 1e300

# Transports whose cone preservation is sampled in the homogeneity check
CONE_CHECKED_TRANSPORTS = 5

ANCHORS = {
    "algebra": "Euclidean Jordan algebras: formal reality and the Jordan identity",
    "model": "Probabilistic models: test spaces with convex state sets",
    "sharpness": "Sharpness: a unique state making each outcome certain",
    "spectrality": "Spectrality: states decompose over a single test",
    "conjugate": "Conjugates: η(x, x̄) = 1/n",
    "epr": "EPR state: the normalized trace form is a joint probability",
    "lemma1": "Self-dualizing inner product from a conjugate",
    "lemma2": "Marginals of correlating states are spectral",
    "filters": "Symmetric filters with prescribed attenuation",
    "thm1": "Canonical Jordan product from spectral data",
    "thm2": "Preparation by p-reversible symmetric filters",
    "thm3": "Dagger compact structure of quantum composites",
    "bits": "Bits: rank-2 state spaces are balls",
}

# (kind, size) -> expected ball dimension
BIT_EXPECTATIONS = {
    ("real", 2): 2,
    ("complex", 2): 3,
    ("quaternion", 2): 5,
    ("spin", 4): 4,
}


def check_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def _finite(value: float) -> float:
    value = float(value)
    if math.isnan(value):
        return RESIDUAL_CEILING
    return max(-RESIDUAL_CEILING, min(value, RESIDUAL_CEILING))


def record(name: str, anchor: str, claim: str, residual: float, tolerance: float,
           samples: int = 0, passed: Optional[bool] = None, details: Optional[Dict[str, float]] = None,
           notes: Optional[List[str]] = None) -> CheckRecord:
    residual = _finite(residual)
    return CheckRecord(
        name=name,
        claim=claim,
        anchor=ANCHORS[anchor],
        samples=samples,
        worst_residual=residual,
        tolerance=tolerance,
        passed=residual <= tolerance if passed is None else bool(passed),
        details={key: _finite(value) for key, value in (details or {}).items()},
        notes=list(notes or []),
    )


def named_jordan_model(kind: str, rank: int) -> Model:
    algebra = make_algebra(kind, rank)
    return jordan_model(algebra, name=algebra.label)


def _label(model: Model) -> str:
    return model.name or (model.algebra.label if model.is_jordan else model.backend)


def _jordan_side(model: Model, what: str) -> Model:
    if not model.is_jordan and model.backend != CLASSICAL:
        raise UnsupportedBackendError(f"{what} checks need a Jordan or classical model, got {model!r}")
    return jordan_realization(model)


# --- Per-model checks -------------------------------------------------------

def validation_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    label = _label(model)
    checks = [record(
        f"model.maximally_mixed[{label}]", "model",
        "the maximally mixed state ρ(x) = 1/n is a state",
        state_violation(model, maximally_mixed(model).vector), tol,
        details={"rank": model.rank, "dimension": model.dim},
    )]
    if not model.is_jordan:
        worst = max(state_violation(model, vertex) for vertex in model.vertices)
        checks.append(record(f"model.vertices[{label}]", "model",
                             "every listed vertex is a probability weight", worst, tol,
                             samples=len(model.vertices)))
        return checks

    algebra = model.algebra
    margin = formal_reality_margin(algebra)
    checks.append(record(f"algebra.formal_reality[{label}]", "algebra",
                         "Tr(L_{a∘a}) > 0 for a ≠ 0", max(0.0, -margin), tol,
                         passed=margin > 0, details={"margin": margin}))
    name = f"algebra.jordan_identity[{label}]"
    rng = check_rng(seed, name)
    worst = max(jordan_identity_residual(random_element(algebra, rng), random_element(algebra, rng))
                for _ in range(100))
    checks.append(record(name, "algebra", "a²∘(a∘b) = a∘(a²∘b)", worst, 1e-9, samples=100))

    name = f"algebra.spectral[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    for _ in range(50):
        residuals = spectral_decompose(random_element(algebra, rng)).residuals()
        worst = max(worst, *residuals.values())
    checks.append(record(name, "algebra", "a = Σ λ_i p_i over a Jordan frame", worst, 1e-9, samples=50))
    return checks


def sharpness_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    name = f"sharpness[{_label(model)}]"
    report = sharpness_check(model, check_rng(seed, name), tol=tol)
    notes = []
    for entry in report.offending:
        if entry["face_vertices"] is None:
            notes.append(f"{entry['outcome']}: Peirce space of dimension {entry['face_dimension'] + 1}")
        else:
            notes.append(f"{entry['outcome']}: certainty face has {entry['face_vertices']} vertices "
                         f"(dimension {entry['face_dimension']})")
    return [record(name, "sharpness", "every outcome has exactly one state with α(x) = 1",
                   report.worst_residual, tol, samples=report.outcomes_checked,
                   passed=report.sharp, notes=notes)]


def spectrality_checks(model: Model, seed: int, tol: float = DEFAULT_TOL,
                       samples: Optional[int] = None) -> List[CheckRecord]:
    label = _label(model)
    samples = samples or default_samples()
    checks = []
    if not model.is_jordan:
        centroid = State(model, model.vertices.mean(axis=0))
        result = spectrality_decompose(model, centroid, delta=default_delta(model, tol), tol=tol)
        checks.append(record(f"spectrality.centroid[{label}]", "spectrality",
                             "the centroid state is Σ α(x) δ_x over one test",
                             result.residual, tol, passed=result.success,
                             notes=[f"best test: {list(result.test)}"] if result.test else []))
    name = f"spectrality.model[{label}]"
    report = model_spectrality_check(model, check_rng(seed, name), samples=samples, tol=max(tol, 1e-9))
    notes = [f"witness Δ: {report.witness}"] if report.witness else []
    checks.append(record(name, "spectrality", "some outcome-indexed family Δ makes every probed state spectral",
                         report.worst_residual, max(tol, 1e-9), samples=report.probes,
                         passed=report.spectral,
                         details={"delta_families_tried": report.delta_families_tried}, notes=notes))
    return checks


def conjugate_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    model = _jordan_side(model, "conjugate")
    label = _label(model)
    conjugate = make_conjugate(model)
    checks = []

    name = f"conjugate.correlation[{label}]"
    worst = correlation_residual(conjugate, check_rng(seed, name), samples=50)
    checks.append(record(name, "conjugate", "η(x, ȳ) = δ_xy / n on sampled frames", worst, 1e-10, samples=50))

    name = f"conjugate.eta_valid[{label}]"
    report = validate_bipartite(conjugate.eta, check_rng(seed, name), samples=4, tol=1e-9)
    checks.append(record(name, "conjugate", "η is a non-signaling bipartite state",
                         report.worst_violation, 1e-9, samples=report.tests_checked,
                         details=report.violations))

    rho = maximally_mixed(model).vector
    deviation = max(float(np.abs(marginal(conjugate.eta, side).vector - rho).max()) for side in ("A", "B"))
    checks.append(record(f"conjugate.marginals[{label}]", "conjugate",
                         "both marginals of η are the maximally mixed state", deviation, 1e-12))

    if model.algebra.kind == "complex" and model.rank >= 2:
        name = f"conjugate.epr[{label}]"
        epr = epr_check(model.rank, check_rng(seed, name), samples=100)
        checks.append(record(name, "epr", "<(a ⊗ b̄)Ψ, Ψ> = Tr(ab)/n",
                             max(epr.worst_deviation, epr.basis_deviation, epr.eta_deviation,
                                 epr.pure_same, epr.pure_orthogonal),
                             1e-12, samples=epr.samples,
                             details={"basis_deviation": epr.basis_deviation,
                                      "eta_deviation": epr.eta_deviation}))
    return checks


def selfdual_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    model = _jordan_side(model, "self-duality")
    label = _label(model)
    conjugate = make_conjugate(model)
    name = f"lemma1.eta_form[{label}]"
    form, report = eta_inner_product(conjugate, check_rng(seed, name))
    checks = [record(name, "lemma1", "<a, b> := η(a, b̄) is symmetric and positive definite",
                     max(report.symmetry_residual, report.frame_norm_residual, report.trace_form_residual),
                     1e-10, passed=report.passed,
                     details={"min_eigenvalue": report.min_eigenvalue, "unit_norm": report.unit_norm})]
    name = f"lemma1.self_duality[{label}]"
    duality = self_duality_check(form, check_rng(seed, name), samples=200, tol=tol)
    checks.append(record(name, "lemma1", "a ∈ E₊ iff <a, b> ≥ 0 for all b ∈ E₊",
                         max(max(0.0, -duality.forward_min), duality.order_isomorphism_residual),
                         1e-10, samples=duality.samples, passed=duality.passed,
                         details={"converse_failures": duality.converse_failures,
                                  "worst_witness_value": duality.worst_witness_value}))
    return checks


def _noncommuting_congruence(model: Model) -> Optional[LinearMap]:
    algebra = model.algebra
    if not algebra.is_matrix_kind or model.rank < 2:
        return None
    N = np.eye(model.rank)
    N[0, 1] = 3.0
    if algebra.kind == "quaternion":
        N = np.block([[N, np.zeros_like(N)], [np.zeros_like(N), N]])
    return matrix_congruence(algebra, N)


def filter_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    model = _jordan_side(model, "filter")
    label = _label(model)
    algebra = model.algebra
    conjugate = make_conjugate(model)
    checks = []

    name = f"filters.identities[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    for _ in range(10):
        phi = make_filter(model, random_frame(algebra, rng), rng.uniform(0.0, 1.0, size=model.rank))
        worst = max(worst, *filter_residuals(phi, rng, samples=8).values())
    checks.append(record(name, "filters", "Φ(α)(x) = t_x α(x), Φ*(x̂) = t_x x̂, Φ(ρ) = (1/n) Σ t_x δ_x",
                         worst, 1e-9, samples=10))

    name = f"filters.symmetry[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    for _ in range(10):
        phi = make_filter(model, random_frame(algebra, rng), rng.uniform(0.0, 1.0, size=model.rank))
        worst = max(worst, filter_symmetry_check(phi, conjugate, rng, samples=20))
    checks.append(record(name, "filters", "U_c filters are symmetric with respect to η", worst, 1e-9,
                         samples=10))

    asymmetric = _noncommuting_congruence(model)
    if asymmetric is not None:
        name = f"filters.asymmetry_detected[{label}]"
        residual = filter_symmetry_check(asymmetric, conjugate, check_rng(seed, name), samples=100)
        checks.append(record(name, "filters", "a congruence by a non-normal matrix is flagged as asymmetric",
                             residual, 0.01, passed=residual > 0.01, samples=100,
                             notes=["passes when the residual exceeds the tolerance"]))

    name = f"filters.p_reversible[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    reversible = True
    for _ in range(10):
        phi = make_filter(model, random_frame(algebra, rng), rng.uniform(0.1, 1.0, size=model.rank))
        report = p_reversibility_check(phi, rng)
        worst = max(worst, report.residual)
        reversible = reversible and report.reversible
    checks.append(record(name, "filters", "S ∘ Φ = p·id with p = min t_x and S a process", worst, 1e-9,
                         samples=10, passed=reversible and worst <= 1e-9))

    checks.append(homogeneity_record(model, seed, samples=100))
    return checks


def homogeneity_record(model: Model, seed: int, samples: int = 100) -> CheckRecord:
    algebra = model.algebra
    name = f"thm1.homogeneity[{_label(model)}]"
    rng = check_rng(seed, name)
    transport = 0.0
    cone = 0.0
    roundtrip = 0.0
    for index in range(samples):
        a = random_interior(algebra, rng)
        b = random_interior(algebra, rng)
        T = homogeneity_transport(a, b)
        transport = max(transport, float(np.abs(T(a).coords - b.coords).max()))
        back = homogeneity_transport(b, a)
        roundtrip = max(roundtrip, back.compose(T).distance(LinearMap.identity(algebra)))
        if index < CONE_CHECKED_TRANSPORTS:
            report = order_automorphism_check(T, rng, samples=100)
            cone = max(cone, -report.forward_min_eigenvalue, -report.inverse_min_eigenvalue, 0.0)
    return record(name, "thm1", "T = U_{√b} ∘ U_{√a}⁻¹ maps a to b and preserves the cone both ways",
                  max(transport, cone, roundtrip), 1e-8, samples=samples,
                  details={"transport": transport, "cone": cone, "roundtrip": roundtrip},
                  notes=[f"cone preservation sampled at 100 points on the first "
                         f"{min(samples, CONE_CHECKED_TRANSPORTS)} transports"])


# --- Reconstruction pipelines ----------------------------------------------

def lemma1_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    return (sharpness_checks(model, seed, tol)
            + spectrality_checks(model, seed, tol)
            + conjugate_checks(model, seed, tol)
            + selfdual_checks(model, seed, tol))


def lemma2_checks(model: Model, seed: int, tol: float = DEFAULT_TOL,
                  samples: Optional[int] = None) -> List[CheckRecord]:
    model = _jordan_side(model, "dilation")
    samples = samples or default_samples()
    label = _label(model)
    conjugate = make_conjugate(model)
    name = f"lemma2.dilation[{label}]"
    rng = check_rng(seed, name)
    marginal_worst = 0.0
    validity_worst = 0.0
    correlating = True
    for _ in range(samples):
        alpha = State(model, random_state(model.algebra, rng).coords)
        omega = correlation_dilation(conjugate, alpha)
        marginal_worst = max(marginal_worst, float(np.abs(marginal(omega, "A").vector - alpha.vector).max()))
        validity_worst = max(validity_worst, validate_bipartite(omega, rng, samples=2).worst_violation)
        frame = spectral_decompose(alpha.element).frame
        result = correlating_check(omega, frame, [conjugate.bar(x) for x in frame])
        correlating = correlating and result.success and all(i == j for i, j in result.bijection.items())
    return [record(name, "lemma2", "every state dilates to a correlating state with marginal α",
                   max(marginal_worst, validity_worst), 1e-10, samples=samples,
                   passed=correlating and max(marginal_worst, validity_worst) <= 1e-10,
                   details={"marginal": marginal_worst, "validity": validity_worst})]


def thm1_checks(model: Model, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    model = _jordan_side(model, "product recovery")
    label = _label(model)
    name = f"thm1.product_recovery[{label}]"
    table, report = recover_jordan_product(make_conjugate(model), check_rng(seed, name), samples=100)
    checks = [record(name, "thm1", "a • b = ½((a + b)² − a² − b²) is the native Jordan product",
                     max(report.table_residual, report.bilinearity_residual,
                         report.jordan_identity_residual, report.unit_residual, report.outcome_residual),
                     1e-8, samples=report.samples, passed=report.passed,
                     details={"table": report.table_residual,
                              "bilinearity": report.bilinearity_residual,
                              "jordan_identity": report.jordan_identity_residual,
                              "outcomes": report.outcome_residual,
                              **report.details},
                     notes=report.notes)]

    name = f"thm1.sharp_representation[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    decreasing = True
    for _ in range(50):
        representation = unique_spectral_rep(random_element(model.algebra, rng))
        worst = max(worst, representation.residual())
        decreasing = decreasing and bool(np.all(np.diff(representation.values) < 0))
    checks.append(record(name, "thm1", "a = Σ t_i e_i with t_0 > t_1 > ... and orthogonal sharp e_i",
                         worst, 1e-10, samples=50, passed=decreasing and worst <= 1e-10))
    checks.append(homogeneity_record(model, seed))
    return checks


def thm2_checks(model: Model, seed: int, tol: float = DEFAULT_TOL,
                samples: Optional[int] = None) -> List[CheckRecord]:
    model = _jordan_side(model, "preparation")
    samples = samples or default_samples()
    label = _label(model)
    conjugate = make_conjugate(model)
    name = f"thm2.preparation[{label}]"
    rng = check_rng(seed, name)
    reversal = 0.0
    symmetry = 0.0
    proportional = 0.0
    reversible = True
    for _ in range(samples):
        alpha = State(model, random_state(model.algebra, rng).coords)
        phi = prepare_state(model, alpha)
        report = p_reversibility_check(phi, rng)
        reversible = reversible and report.reversible and report.p > 0
        reversal = max(reversal, report.residual)
        symmetry = max(symmetry, filter_symmetry_check(phi, conjugate, rng, samples=10))
        scale = model.rank * float(spectral_decompose(alpha.element).eigenvalues.max())
        prepared = phi.apply(maximally_mixed(model))
        proportional = max(proportional, float(np.abs(scale * prepared.vector - alpha.vector).max()))
    checks = [record(name, "thm2", "every nonsingular state is prepared by a p-reversible symmetric filter",
                     max(reversal, symmetry, proportional), 1e-9, samples=samples,
                     passed=reversible and max(reversal, symmetry, proportional) <= 1e-9,
                     details={"reversal": reversal, "symmetry": symmetry, "proportionality": proportional})]

    name = f"thm2.two_paths[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    passed = True
    for _ in range(10):
        alpha = State(model, random_state(model.algebra, rng).coords)
        report = filter_preparation_spectrality(conjugate, alpha)
        passed = passed and report.passed
        worst = max(worst, report.decomposition_residual, report.preparation_residual,
                    *report.details.values())
    checks.append(record(name, "thm2", "α = Σ α(x) δ_x and α = n·max(s)·Φ(ρ) agree",
                         worst, 1e-9, samples=10, passed=passed))

    name = f"thm2.filter_homogeneity[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    for _ in range(10):
        a = random_interior(model.algebra, rng)
        phi, scale = filter_homogeneity(a)
        worst = max(worst, float(np.abs(scale * phi(unit(model.algebra)).coords - a.coords).max()))
    checks.append(record(name, "thm2", "every interior point is a multiple of Φ(u) for a p-reversible filter",
                         worst, 1e-9, samples=10))
    return checks


def thm3_checks(n: int, seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    model = named_jordan_model("complex", n)
    label = _label(model)
    checks = []

    snake = snake_check(n)
    checks.append(record(f"thm3.snake[{label}]", "thm3", "both snake composites equal (1/n)·identity",
                         max(snake.residual, snake.loop_residual), 1e-10, passed=snake.passed,
                         details={"normalization": snake.normalization}, notes=[snake.note]))

    name = f"thm3.dagger[{label}]"
    rng = check_rng(seed, name)
    conjugate = make_conjugate(model)
    form, _ = eta_inner_product(conjugate, rng)
    forms = {model.algebra: form}
    worst = 0.0
    passed = True
    for _ in range(10):
        T = LinearMap(model.algebra, model.algebra, rng.standard_normal((model.dim, model.dim)))
        S = LinearMap(model.algebra, model.algebra, rng.standard_normal((model.dim, model.dim)))
        report = dagger_check(T, S, forms, rng, samples=10)
        passed = passed and report.passed
        worst = max(worst, report.worst)
    phi = quadratic_rep(random_interior(model.algebra, rng))
    self_adjoint = dagger_adjoint(phi, form, form).distance(phi)
    checks.append(record(name, "thm3", "† is involutive, reverses composition and fixes U_c filters",
                         worst, 1e-12, samples=10,
                         passed=passed and worst <= 1e-12 and self_adjoint <= 1e-10,
                         details={"filter_self_adjoint": self_adjoint}))

    for m in (2, 3):
        partner = named_jordan_model("complex", m)
        name = f"thm3.local_tomography[{label}⊗{_label(partner)}]"
        composite = quantum_composite(model, partner, check_rng(seed, name))
        report = local_tomography_check(composite)
        axioms = max(composite.residuals.values())
        checks.append(record(name, "thm3", "dim V(AB) = dim V(A)·dim V(B) and product effects span",
                             axioms, 1e-9, passed=report.passed and axioms <= 1e-9,
                             details={"dim_joint": report.dim_joint, "span_rank": report.span_rank}))

    unit_composite = quantum_composite(model, trivial_model())
    checks.append(record(f"thm3.monoidal_unit[{label}]", "thm3", "A ⊗ 1 has the dimension of A",
                         abs(unit_composite.joint.dim - model.dim), 0.0))

    name = f"thm3.epr_pullback[{label}]"
    composite = quantum_composite(model, named_jordan_model("complex", n), check_rng(seed, name))
    report = validate_bipartite(pullback(composite, epr_joint_state(n)), check_rng(seed, name), samples=4)
    checks.append(record(name, "thm3", "the EPR joint state pulls back to a valid bipartite state",
                         report.worst_violation, 1e-9, samples=report.tests_checked))

    name = f"thm3.conjugate_functoriality[{label}]"
    rng = check_rng(seed, name)
    worst = 0.0
    passed = True
    for _ in range(5):
        phi = quadratic_rep(random_element(model.algebra, rng))
        report = conjugate_functoriality_check(phi, conjugate, conjugate, rng, samples=20)
        passed = passed and report.passed
        worst = max(worst, report.double_conjugation_residual, report.eta_symmetry_residual,
                    report.positivity_gap)
    checks.append(record(name, "thm3", "φ̄̄ = φ and η_Ā(ā, b) = η_A(a, b̄)", worst, 1e-12,
                         samples=5, passed=passed))
    return checks


def bit_checks(model: Model, seed: int) -> List[CheckRecord]:
    label = _label(model)
    name = f"bits.classification[{label}]"
    result = classify_bit(model, check_rng(seed, name))
    key = (model.algebra.kind, model.algebra.size)
    expected = BIT_EXPECTATIONS.get(key, result.d)
    checks = [record(name, "bits", "Ω(A) is a ball of dimension d = dim V(A) − 1",
                     result.sphere_residual, 1e-9, passed=result.passed and result.d == expected,
                     details={"d": result.d}, notes=[result.label])]
    name = f"bits.mixtures[{label}]"
    report = bit_check(model, check_rng(seed, name))
    checks.append(record(name, "bits", "every state is t δ_x + (1 − t) δ_y over one test",
                         report.worst_residual, 1e-9, samples=report.samples, passed=report.is_bit))
    return checks


# --- Entry points used by main.py -------------------------------------------

CHECK_SUITES: Dict[str, Callable[[Model, int, float], List[CheckRecord]]] = {
    "sharpness": sharpness_checks,
    "spectrality": spectrality_checks,
    "conjugate": conjugate_checks,
    "selfdual": selfdual_checks,
    "filters": filter_checks,
}

THEOREM_SUITES: Dict[str, Callable[[Model, int, float], List[CheckRecord]]] = {
    "lemma1": lemma1_checks,
    "lemma2": lemma2_checks,
    "thm1": thm1_checks,
    "thm2": thm2_checks,
}


def theorem_checks(theorem: str, kind: str, rank: int, seed: int, tol: float) -> List[CheckRecord]:
    kind = normalize_kind(kind)
    if theorem == "thm3":
        if kind != "complex":
            raise UnsupportedBackendError("the dagger compact checks run on complex quantum models")
        return thm3_checks(rank, seed, tol)
    return THEOREM_SUITES[theorem](named_jordan_model(kind, rank), seed, tol)


def gbit_demo_checks(seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    """The square bit: a valid model that is neither sharp nor spectral."""
    model = build_model(get_builtin_descriptor("gbit"))
    return (validation_checks(model, seed, tol)
            + sharpness_checks(model, seed, tol)
            + spectrality_checks(model, seed, tol)
            + [record(f"bits.mixtures[{_label(model)}]", "bits",
                      "every state is t δ_x + (1 − t) δ_y over one test",
                      bit_check(model, check_rng(seed, "bits.mixtures[gbit]")).worst_residual, 1e-9,
                      samples=50)])


# Models swept by the full report: (kind, sizes)
REPORT_SWEEP = {
    "real": (2, 3, 4),
    "complex": (2, 3, 4),
    "quaternion": (2, 3),
    "spin": (2, 3, 4, 5, 6, 7, 8),
}


def full_report_checks(seed: int, tol: float = DEFAULT_TOL) -> List[CheckRecord]:
    checks: List[CheckRecord] = []
    for kind, sizes in REPORT_SWEEP.items():
        for size in sizes:
            model = named_jordan_model(kind, size)
            checks += validation_checks(model, seed, tol)
            checks += conjugate_checks(model, seed, tol)
            if model.dim <= 16:
                checks += selfdual_checks(model, seed, tol)
                checks += thm1_checks(model, seed, tol)
            if size <= 3 or kind == "spin" and size <= 4:
                checks += filter_checks(model, seed, tol)
                checks += thm2_checks(model, seed, tol)
                checks += lemma2_checks(model, seed, tol)
                checks += sharpness_checks(model, seed, tol)
    for kind, size in BIT_EXPECTATIONS:
        checks += bit_checks(named_jordan_model(kind, size), seed)
    for n in (2, 3, 4):
        checks += thm3_checks(n, seed, tol)
    # suites share some checks (homogeneity); identical names carry identical results
    return list({check.name: check for check in checks}.values())
