"""
Composites Module
=================
Non-signaling composites of complex quantum models and the dagger-compact
structure built on conjugates:
- quantum_composite: AB = ComplexHerm(nm) with π(x, y) = x ⊗ y
- pullback of joint states to bipartite states, the trivial model 1
- local tomography, snake identities, dagger adjoints and conjugate functoriality
"""
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from conjugates import Conjugate, UnsupportedBackendError, make_conjugate
from jordan_algebra import Element, LinearMap, make_algebra, random_element, random_frame
from probabilistic_models import (
    BipartiteState,
    Model,
    State,
    cone_preservation,
    jordan_model,
    product_state,
    validate_bipartite,
)
from reconstruction import EtaForm

SNAKE_NOTE = ("cup is the unnormalized Σ x ⊗ x̄ and cap is the normalized state η, "
              "so each snake composite equals (1/n)·identity")


class MissingEtaFormError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Composite:
    """A non-signaling composite AB of two complex quantum models."""
    factor_a: Model
    factor_b: Model
    joint: Model
    pairing: np.ndarray
    residuals: Dict[str, float] = field(default_factory=dict)

    def pair(self, x: Element, y: Element) -> Element:
        """π(x, y) = x ⊗ y as an effect of AB."""
        return Element(self.joint.algebra, self.pairing @ np.kron(x.coords, y.coords))

    def product_joint_state(self, alpha: State, beta: State) -> State:
        matrix = np.kron(alpha.element.matrix(), beta.element.matrix())
        return State(self.joint, self.joint.algebra.from_matrix(matrix))


@dataclass
class LocalTomographyReport:
    passed: bool
    dim_joint: int
    dim_product: int
    span_rank: int


@dataclass
class SnakeReport:
    passed: bool
    rank: int
    residual: float
    normalization: float
    loop_residual: float
    note: str = SNAKE_NOTE


@dataclass
class DaggerReport:
    passed: bool
    adjoint_residual: float
    involution_residual: float
    composition_residual: float
    identity_residual: float

    @property
    def worst(self) -> float:
        return max(self.adjoint_residual, self.involution_residual,
                   self.composition_residual, self.identity_residual)


@dataclass
class FunctorialityReport:
    passed: bool
    double_conjugation_residual: float
    eta_symmetry_residual: float
    positivity_gap: float


def _require_complex(model: Model) -> None:
    if not model.is_jordan or model.algebra.kind != "complex":
        raise UnsupportedBackendError(f"{model!r} is not a complex quantum model")


def trivial_model() -> Model:
    """The monoidal unit 1, with V(1) = R."""
    return jordan_model(make_algebra("complex", 1), name="trivial")


def _pairing_matrix(a: Model, b: Model, joint: Model) -> np.ndarray:
    algebra_a, algebra_b = a.algebra, b.algebra
    columns = []
    for x in np.eye(algebra_a.dim):
        X = algebra_a.to_matrix(x)
        for y in np.eye(algebra_b.dim):
            columns.append(joint.algebra.from_matrix(np.kron(X, algebra_b.to_matrix(y))))
    return np.array(columns).T


def pullback(composite: Composite, joint_state: State) -> BipartiteState:
    """ω(e, f) = <π(e, f), W> for a joint state W."""
    if not joint_state.model.same_as(composite.joint):
        raise UnsupportedBackendError("joint state belongs to a different model")
    weights = joint_state.vector @ np.array(composite.joint.metric) @ composite.pairing
    form = weights.reshape(composite.factor_a.dim, composite.factor_b.dim)
    return BipartiteState(composite.factor_a, composite.factor_b, form, label="pullback")


def epr_joint_state(n: int) -> State:
    """|Ψ><Ψ| as a state of ComplexHerm(n²)."""
    joint = jordan_model(make_algebra("complex", n * n))
    psi = np.eye(n).reshape(-1) / np.sqrt(n)
    return State(joint, joint.algebra.from_matrix(np.outer(psi, psi)))


def quantum_composite(a: Model, b: Model, rng: Optional[np.random.Generator] = None,
                      samples: int = 4) -> Composite:
    """
    AB = ComplexHerm(nm) with π(x, y) = x ⊗ y.

    Checks by sampling that Σ π(x, y) over a test pair is u_AB and that
    product and random joint states pull back to valid bipartite states.
    """
    _require_complex(a)
    _require_complex(b)
    rng = rng if rng is not None else np.random.default_rng(0)
    joint = jordan_model(make_algebra("complex", a.algebra.size * b.algebra.size))
    composite = Composite(a, b, joint, _pairing_matrix(a, b, joint))

    unit_residual = 0.0
    for _ in range(samples):
        total = np.zeros(joint.dim)
        frame_a = random_frame(a.algebra, rng)
        frame_b = random_frame(b.algebra, rng)
        for x in frame_a:
            for y in frame_b:
                total = total + composite.pair(x, y).coords
        unit_residual = max(unit_residual, float(np.abs(total - joint.unit_vector).max()))

    pullback_residual = 0.0
    for _ in range(samples):
        g = random_element(joint.algebra, rng).matrix()
        W = g @ g.conj().T
        W = W / np.real(np.trace(W))
        state = State(joint, joint.algebra.from_matrix(W))
        report = validate_bipartite(pullback(composite, state), rng, samples=2)
        pullback_residual = max(pullback_residual, report.worst_violation)

    return replace(composite, residuals={"unit": unit_residual, "pullback": pullback_residual})


def local_tomography_check(composite: Composite, tol: float = 1e-9) -> LocalTomographyReport:
    """dim V(AB) = dim V(A)·dim V(B), and the product effects π(x, y) span V(AB)*."""
    dim_product = composite.factor_a.dim * composite.factor_b.dim
    span_rank = int(np.linalg.matrix_rank(composite.pairing, tol=tol))
    return LocalTomographyReport(
        passed=composite.joint.dim == dim_product and span_rank == composite.joint.dim,
        dim_joint=composite.joint.dim,
        dim_product=dim_product,
        span_rank=span_rank,
    )


def cup_matrix(n: int) -> np.ndarray:
    """Coordinates K'_ij of the unnormalized Σ x ⊗ x̄ in the product basis of V(A) ⊗ V(Ā)."""
    algebra = make_algebra("complex", n)
    psi = np.eye(n).reshape(-1)
    W = np.outer(psi, psi)
    basis = [algebra.to_matrix(row) for row in np.eye(algebra.dim)]
    K = np.empty((algebra.dim, algebra.dim))
    for i, b_i in enumerate(basis):
        for j, b_j in enumerate(basis):
            K[i, j] = np.real(np.trace(np.kron(b_i, b_j) @ W))
    return K


def snake_check(n: int, tol: float = 1e-10) -> SnakeReport:
    """
    (cap ⊗ id)(id ⊗ cup) and (id ⊗ cap)(cup ⊗ id) against (1/n)·identity,
    with cap = η and cup = Σ x ⊗ x̄.
    """
    if n < 2:
        raise UnsupportedBackendError(f"snake check needs n >= 2, got {n}")
    conjugate = make_conjugate(jordan_model(make_algebra("complex", n)))
    cap = np.array(conjugate.eta.form)
    cup = cup_matrix(n)
    identity = np.eye(cap.shape[0])
    left = (cap @ cup).T
    right = cup @ cap
    residual = max(float(np.abs(left - identity / n).max()),
                   float(np.abs(right - identity / n).max()))
    loop = float(np.abs(n * left @ identity - identity).max())
    return SnakeReport(passed=max(residual, loop) <= tol, rank=n, residual=residual,
                       normalization=1.0 / n, loop_residual=loop)


def dagger_adjoint(T: LinearMap, domain_form: Optional[EtaForm],
                   codomain_form: Optional[EtaForm]) -> LinearMap:
    """T† with <T a, b>_B = <a, T† b>_A in the η inner products."""
    if domain_form is None or codomain_form is None:
        raise MissingEtaFormError("dagger adjoints need η inner products on both ends")
    matrix = np.linalg.solve(domain_form.gram, T.matrix.T @ codomain_form.gram)
    return LinearMap(T.codomain, T.domain, matrix)


def dagger_check(T: LinearMap, S: LinearMap, forms: Dict, rng: np.random.Generator,
                 samples: int = 100, tol: float = 1e-12) -> DaggerReport:
    """
    Defining identity, involution, composition reversal and identity
    preservation for T : A -> B and S : B -> C, with `forms` mapping
    each algebra to its EtaForm.
    """
    def form_of(algebra):
        return forms.get(algebra)

    T_dagger = dagger_adjoint(T, form_of(T.domain), form_of(T.codomain))
    adjoint = 0.0
    for _ in range(samples):
        a = random_element(T.domain, rng)
        b = random_element(T.codomain, rng)
        lhs = form_of(T.codomain).inner(T(a), b)
        rhs = form_of(T.domain).inner(a, T_dagger(b))
        adjoint = max(adjoint, abs(lhs - rhs))

    T_double = dagger_adjoint(T_dagger, form_of(T.codomain), form_of(T.domain))
    involution = T_double.distance(T)

    ST = S.compose(T)
    reversed_ = dagger_adjoint(T, form_of(T.domain), form_of(T.codomain)).compose(
        dagger_adjoint(S, form_of(S.domain), form_of(S.codomain)))
    composition = dagger_adjoint(ST, form_of(ST.domain), form_of(ST.codomain)).distance(reversed_)

    identity = LinearMap.identity(T.domain)
    identity_residual = dagger_adjoint(identity, form_of(T.domain), form_of(T.domain)).distance(identity)

    return DaggerReport(
        passed=max(adjoint, involution, composition, identity_residual) <= tol,
        adjoint_residual=adjoint,
        involution_residual=involution,
        composition_residual=composition,
        identity_residual=identity_residual,
    )


def conjugate_functoriality_check(T: LinearMap, conjugate_a: Conjugate, conjugate_b: Conjugate,
                                  rng: Optional[np.random.Generator] = None,
                                  samples: int = 50) -> FunctorialityReport:
    """φ̄ = C_B φ C_A: double conjugation, η_Ā(ā, b) = η_A(a, b̄), and positivity of φ̄."""
    _require_complex(conjugate_a.model)
    _require_complex(conjugate_b.model)
    if T.domain != conjugate_a.algebra or T.codomain != conjugate_b.algebra:
        raise UnsupportedBackendError("map does not run between the conjugates' algebras")
    rng = rng if rng is not None else np.random.default_rng(0)
    C_a, C_b = conjugate_a.conjugation, conjugate_b.conjugation

    bar = LinearMap(T.domain, T.codomain, C_b @ T.matrix @ C_a)
    double = LinearMap(T.domain, T.codomain, C_b @ bar.matrix @ C_a)
    double_residual = double.distance(T)

    # Ā̄ = A: the conjugate of Ā pairs Ā with A again
    bar_conjugate = make_conjugate(conjugate_a.conjugate_model)
    symmetry = 0.0
    for _ in range(samples):
        a = random_element(conjugate_a.algebra, rng)
        b = random_element(conjugate_a.algebra, rng)
        lhs = bar_conjugate.eta.evaluate(C_a @ a.coords, b.coords)
        rhs = conjugate_a.eta_value(a, b)
        symmetry = max(symmetry, abs(lhs - rhs))

    original_min = cone_preservation(T, rng, samples=10)
    bar_min = cone_preservation(bar, rng, samples=10)
    # only positive maps are required to have positive conjugates
    gap = max(0.0, -bar_min) if original_min >= -1e-9 else 0.0
    return FunctorialityReport(
        passed=max(double_residual, symmetry) <= 1e-12 and gap <= 1e-9,
        double_conjugation_residual=double_residual,
        eta_symmetry_residual=symmetry,
        positivity_gap=gap,
    )


def product_state_pullback_residual(composite: Composite, alpha: State, beta: State) -> float:
    """How far the pullback of the joint product state is from α ⊗ β."""
    pulled = pullback(composite, composite.product_joint_state(alpha, beta))
    return float(np.abs(pulled.form - product_state(alpha, beta).form).max())
