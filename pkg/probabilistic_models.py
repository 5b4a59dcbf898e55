"""
Probabilistic Models
====================
Test spaces carrying convex sets of probability weights, in three backends:
- classical: a single test with the full simplex of states
- jordan: outcomes are primitive idempotents, tests are Jordan frames
  (an infinite family, sampled lazily)
- polytopic: finitely many outcomes and tests, states given by vertices

Also: effects, non-signaling bipartite states with their marginals and
conditionals, the conditioning map of a bipartite state, and the sharpness
and spectrality checks.

Vectors are handled uniformly: a state or effect of a finite model is a vector
over its outcomes, a state or effect of a Jordan model is a coordinate vector
of its algebra, and pairings go through `model.metric`.
"""
import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import nnls

from config import DEFAULT_TOL
from jordan_algebra import (
    Algebra,
    Element,
    LinearMap,
    algebra_from_descriptor,
    direct_sum,
    frame_residuals,
    make_algebra,
    quadratic_rep,
    random_frame,
    random_interior,
    spectral_decompose,
    trace_inner_product,
    unit,
)

CLASSICAL = "classical"
JORDAN = "jordan"
POLYTOPIC = "polytopic"

# Processes are positive linear maps between state spaces
Process = LinearMap

Outcome = Union[int, str, Element]


class ModelError(ValueError):
    """Raised when a model descriptor or model operation is invalid."""


class ModelMismatchError(ModelError):
    pass


class ZeroProbabilityError(ModelError):
    pass


class InvalidDeltaError(ModelError):
    pass


@dataclass(frozen=True, eq=False)
class Model:
    """A probabilistic model A = (M(A), Ω(A))."""
    backend: str
    rank: int
    name: str = ""
    algebra: Optional[Algebra] = None
    outcomes: Tuple[str, ...] = ()
    tests: Tuple[Tuple[int, ...], ...] = ()
    vertices: Optional[np.ndarray] = None

    @property
    def is_jordan(self) -> bool:
        return self.backend == JORDAN

    @property
    def dim(self) -> int:
        return self.algebra.dim if self.is_jordan else len(self.outcomes)

    @property
    def metric(self) -> np.ndarray:
        return self.algebra.gram if self.is_jordan else np.eye(self.dim)

    @property
    def metric_inverse(self) -> np.ndarray:
        return self.algebra.gram_inverse if self.is_jordan else np.eye(self.dim)

    @property
    def unit_vector(self) -> np.ndarray:
        """Coordinates of the order unit u_A."""
        if self.is_jordan:
            return np.array(self.algebra.unit_coords)
        indicator = np.zeros(self.dim)
        indicator[list(self.tests[0])] = 1.0
        return indicator

    @property
    def key(self) -> Tuple:
        if self.is_jordan:
            return (JORDAN, self.algebra.key)
        return (self.backend, self.outcomes, self.tests, self.vertices.tobytes())

    def same_as(self, other: "Model") -> bool:
        return self.key == other.key

    def outcome_index(self, outcome: Union[int, str]) -> int:
        if isinstance(outcome, (int, np.integer)):
            if not 0 <= outcome < len(self.outcomes):
                raise ModelError(f"outcome index {outcome} out of range")
            return int(outcome)
        if outcome not in self.outcomes:
            raise ModelError(f"unknown outcome {outcome!r}")
        return self.outcomes.index(outcome)

    def outcome_vector(self, outcome: Outcome) -> np.ndarray:
        """Coordinates of the outcome effect x̂."""
        if self.is_jordan:
            if not isinstance(outcome, Element) or outcome.algebra != self.algebra:
                raise ModelMismatchError("Jordan outcomes are primitive idempotents of the model's algebra")
            return np.array(outcome.coords)
        indicator = np.zeros(self.dim)
        indicator[self.outcome_index(outcome)] = 1.0
        return indicator

    def outcome_label(self, outcome: Outcome) -> str:
        if self.is_jordan:
            return repr(outcome)
        return self.outcomes[self.outcome_index(outcome)]

    def __repr__(self) -> str:
        where = self.algebra.label if self.is_jordan else f"{len(self.outcomes)} outcomes"
        return f"Model({self.backend}, {self.name or where}, rank={self.rank})"


@dataclass(frozen=True, eq=False)
class State:
    model: Model
    vector: np.ndarray

    def __post_init__(self):
        vector = np.array(self.vector, dtype=float).reshape(-1)
        if vector.shape[0] != self.model.dim:
            raise ModelError(f"state needs {self.model.dim} coordinates, got {vector.shape[0]}")
        vector.setflags(write=False)
        object.__setattr__(self, "vector", vector)

    def probability(self, outcome: Outcome) -> float:
        return float(self.model.outcome_vector(outcome) @ self.model.metric @ self.vector)

    @property
    def element(self) -> Element:
        if not self.model.is_jordan:
            raise ModelError("only Jordan states have a cone element")
        return Element(self.model.algebra, self.vector)


@dataclass(frozen=True, eq=False)
class Effect:
    model: Model
    vector: np.ndarray

    def __post_init__(self):
        vector = np.array(self.vector, dtype=float).reshape(-1)
        if vector.shape[0] != self.model.dim:
            raise ModelError(f"effect needs {self.model.dim} coordinates, got {vector.shape[0]}")
        if not (dual_cone_contains(self.model, vector)
                and dual_cone_contains(self.model, self.model.unit_vector - vector)):
            raise ModelError("effect must satisfy 0 <= e <= u")
        vector.setflags(write=False)
        object.__setattr__(self, "vector", vector)


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """ω(e, f) = e · form · f on effect coordinates of A and B."""
    model_a: Model
    model_b: Model
    form: np.ndarray
    label: str = ""

    def __post_init__(self):
        form = np.array(self.form, dtype=float)
        if form.shape != (self.model_a.dim, self.model_b.dim):
            raise ModelError(f"bipartite form has shape {form.shape}, "
                             f"expected {(self.model_a.dim, self.model_b.dim)}")
        form.setflags(write=False)
        object.__setattr__(self, "form", form)

    def probability(self, x: Outcome, y: Outcome) -> float:
        return float(self.model_a.outcome_vector(x) @ self.form @ self.model_b.outcome_vector(y))

    def evaluate(self, e: np.ndarray, f: np.ndarray) -> float:
        return float(np.asarray(e) @ self.form @ np.asarray(f))

    def table(self, test_a: Sequence[Outcome], test_b: Sequence[Outcome]) -> np.ndarray:
        rows = np.array([self.model_a.outcome_vector(x) for x in test_a])
        cols = np.array([self.model_b.outcome_vector(y) for y in test_b])
        return rows @ self.form @ cols.T


@dataclass
class BipartiteReport:
    passed: bool
    worst_violation: float
    violations: Dict[str, float] = field(default_factory=dict)
    tests_checked: int = 0


@dataclass
class ConditioningMap:
    """ω̂ : E(A) -> V(B) with ω̂(x̂)(y) = ω(x, y)."""
    source: Model
    target: Model
    matrix: np.ndarray
    worst_negativity: float
    reproduction_residual: float
    conditioning_residual: float

    @property
    def positive(self) -> bool:
        return self.worst_negativity <= DEFAULT_TOL

    def apply(self, effect_vector: np.ndarray) -> State:
        return State(self.target, self.matrix @ np.asarray(effect_vector, dtype=float))


@dataclass
class SharpnessReport:
    sharp: bool
    worst_residual: float
    offending: List[Dict] = field(default_factory=list)
    outcomes_checked: int = 0


@dataclass
class SpectralityResult:
    success: bool
    test: Tuple = ()
    weights: np.ndarray = field(default_factory=lambda: np.zeros(0))
    residual: float = float("inf")


@dataclass
class ModelSpectralityReport:
    spectral: bool
    probes: int
    delta_families_tried: int
    witness: Optional[Dict[str, int]] = None
    worst_residual: float = 0.0


# --- Construction -----------------------------------------------------------

def classical_model(outcomes: Sequence[str], name: str = "") -> Model:
    outcomes = tuple(str(o) for o in outcomes)
    if not outcomes:
        raise ModelError("a classical model needs at least one outcome")
    if len(set(outcomes)) != len(outcomes):
        raise ModelError("duplicate outcome names")
    return Model(
        backend=CLASSICAL,
        rank=len(outcomes),
        name=name,
        outcomes=outcomes,
        tests=(tuple(range(len(outcomes))),),
        vertices=_frozen(np.eye(len(outcomes))),
    )


def jordan_model(algebra: Algebra, name: str = "") -> Model:
    return Model(backend=JORDAN, rank=algebra.rank, name=name, algebra=algebra)


def jordan_realization(model: Model) -> Model:
    """
    The model as a Jordan model: classical models become RealSym(1) ⊕ … ⊕ RealSym(1),
    with outcome i carried by the i-th summand's unit. Jordan models are returned as is.
    """
    if model.is_jordan:
        return model
    if model.backend != CLASSICAL:
        raise ModelError(f"{model.backend} models have no Jordan realization")
    summands = [make_algebra("real", 1) for _ in range(model.rank)]
    algebra = summands[0] if len(summands) == 1 else direct_sum(*summands)
    return jordan_model(algebra, name=model.name)


def polytopic_model(outcomes: Sequence[str], tests: Sequence[Sequence[str]],
                    vertices: Sequence[Sequence[float]], name: str = "",
                    tol: float = DEFAULT_TOL) -> Model:
    outcomes = tuple(str(o) for o in outcomes)
    if len(set(outcomes)) != len(outcomes):
        raise ModelError("duplicate outcome names")
    if not tests:
        raise ModelError("a polytopic model needs at least one test")
    index = {name_: i for i, name_ in enumerate(outcomes)}
    test_indices = []
    for test in tests:
        if not test:
            raise ModelError("tests must be non-empty")
        missing = [o for o in test if o not in index]
        if missing:
            raise ModelError(f"test {list(test)} uses unknown outcomes {missing}")
        test_indices.append(tuple(index[o] for o in test))
    sizes = {len(t) for t in test_indices}
    if len(sizes) != 1:
        raise ModelError(f"non-uniform test space: test sizes {sorted(sizes)}")

    vertices = np.array(vertices, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != len(outcomes) or vertices.shape[0] == 0:
        raise ModelError(f"vertices must be a non-empty list of length-{len(outcomes)} rows")
    for row, vertex in enumerate(vertices):
        if vertex.min() < -tol:
            raise ModelError(f"vertex {row} has a negative probability")
        for test in test_indices:
            total = vertex[list(test)].sum()
            if abs(total - 1.0) > tol:
                raise ModelError(f"vertex {row} sums to {total:.6g} on test "
                                 f"{[outcomes[i] for i in test]}, not a probability weight")
    unsupported = [outcomes[i] for i in range(len(outcomes)) if vertices[:, i].max() <= tol]
    if unsupported:
        raise ModelError(f"outcomes with no supporting state: {unsupported}")

    covered = set(itertools.chain.from_iterable(test_indices))
    if len(covered) != len(outcomes):
        raise ModelError("every outcome must belong to some test")

    return Model(
        backend=POLYTOPIC,
        rank=sizes.pop(),
        name=name,
        outcomes=outcomes,
        tests=tuple(test_indices),
        vertices=_frozen(vertices),
    )


def build_model(descriptor) -> Model:
    """Build a model from a descriptor dict (or a schemas.ModelDescriptor)."""
    if hasattr(descriptor, "model_dump"):
        descriptor = descriptor.model_dump(exclude_none=True)
    backend = str(descriptor.get("backend", "")).lower()
    name = descriptor.get("name") or ""
    if backend == CLASSICAL:
        return classical_model(descriptor.get("outcomes") or [], name=name)
    if backend == JORDAN:
        algebra = algebra_from_descriptor(descriptor)
        return jordan_model(algebra, name=name)
    if backend == POLYTOPIC:
        return polytopic_model(
            descriptor.get("outcomes") or [],
            descriptor.get("tests") or [],
            descriptor.get("vertices") or [],
            name=name,
        )
    raise ModelError(f"unknown backend {backend!r}")


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


# --- States and effects ---------------------------------------------------

def state(model: Model, vector) -> State:
    return State(model, vector)


def state_from_element(model: Model, a: Element) -> State:
    if not model.is_jordan or a.algebra != model.algebra:
        raise ModelMismatchError("element does not belong to the model's algebra")
    return State(model, a.coords)


def maximally_mixed(model: Model) -> State:
    """ρ(x) = 1/n on every outcome."""
    if model.is_jordan:
        return State(model, model.algebra.unit_coords / model.rank)
    return State(model, np.full(model.dim, 1.0 / model.rank))


def state_violation(model: Model, vector: np.ndarray) -> float:
    """Distance-like measure of how far `vector` is from Ω(A); 0 for valid states."""
    vector = np.asarray(vector, dtype=float)
    if model.is_jordan:
        a = Element(model.algebra, vector)
        lowest = float(spectral_decompose(a).eigenvalues.min())
        trace = trace_inner_product(a, unit(model.algebra))
        return max(0.0, -lowest) + abs(trace - 1.0)
    # Ω(A) = conv(vertices): nonnegative least squares on [V^T; 1] λ = [α; 1]
    system = np.vstack([model.vertices.T, np.ones(model.vertices.shape[0])])
    target = np.concatenate([vector, [1.0]])
    _, residual = nnls(system, target)
    return float(residual)


def is_valid_state(model: Model, vector: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return state_violation(model, vector) <= tol


def is_nonsingular(alpha: State, tol: float = DEFAULT_TOL) -> bool:
    """Jordan: min eigenvalue > tol. Finite models: α(x) > tol for every outcome."""
    if alpha.model.is_jordan:
        return float(spectral_decompose(alpha.element).eigenvalues.min()) > tol
    return bool(np.all(alpha.vector > tol))


def outcome_effect(model: Model, outcome: Outcome) -> Effect:
    return Effect(model, model.outcome_vector(outcome))


def unit_effect(model: Model) -> Effect:
    return Effect(model, model.unit_vector)


def zero_effect(model: Model) -> Effect:
    return Effect(model, np.zeros(model.dim))


def effect_value(e: Effect, alpha: State) -> float:
    if not e.model.same_as(alpha.model):
        raise ModelMismatchError("effect and state belong to different models")
    return float(e.vector @ e.model.metric @ alpha.vector)


def effect_cone_generators(model: Model) -> List[Effect]:
    """Outcome effects x̂ generating E(A)_+ (finite models only)."""
    if model.is_jordan:
        raise ModelError("Jordan models have infinitely many outcomes; sample frames instead")
    return [outcome_effect(model, i) for i in range(model.dim)]


def dual_cone_contains(model: Model, effect_vector: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Is the functional nonnegative on every state (membership in V(A)*_+)?"""
    effect_vector = np.asarray(effect_vector, dtype=float)
    if model.is_jordan:
        lowest = spectral_decompose(Element(model.algebra, effect_vector)).eigenvalues.min()
        return bool(lowest >= -tol)
    return bool((model.vertices @ effect_vector).min() >= -tol)


def sample_tests(model: Model, rng: Optional[np.random.Generator] = None,
                 samples: int = 4) -> List[np.ndarray]:
    """Tests as stacked outcome vectors: every test of a finite model, sampled frames otherwise."""
    if model.is_jordan:
        rng = rng if rng is not None else np.random.default_rng(0)
        return [np.array([p.coords for p in random_frame(model.algebra, rng)])
                for _ in range(samples)]
    identity = np.eye(model.dim)
    return [identity[list(test)] for test in model.tests]


# --- Bipartite states -----------------------------------------------------

def product_state(alpha: State, beta: State) -> BipartiteState:
    """α⊗β: ω(x, y) = α(x) β(y)."""
    left = alpha.model.metric @ alpha.vector
    right = beta.model.metric @ beta.vector
    return BipartiteState(alpha.model, beta.model, np.outer(left, right), label="product")


def _marginal_vector(omega: BipartiteState, side: str) -> np.ndarray:
    if side == "A":
        return omega.model_a.metric_inverse @ omega.form @ omega.model_b.unit_vector
    if side == "B":
        return omega.model_b.metric_inverse @ omega.form.T @ omega.model_a.unit_vector
    raise ModelError(f"side must be 'A' or 'B', got {side!r}")


def marginal(omega: BipartiteState, side: str) -> State:
    """ω₁ (side 'A') or ω₂ (side 'B')."""
    model = omega.model_a if side == "A" else omega.model_b
    return State(model, _marginal_vector(omega, side))


def conditional(omega: BipartiteState, outcome: Outcome, side: str,
                tol: float = DEFAULT_TOL) -> State:
    """
    Conditional state on `side`, given `outcome` of the other side.

    side 'B' returns ω_{2|x} for an outcome x of A; side 'A' returns ω_{1|y}.
    """
    if side == "B":
        vector = omega.model_a.outcome_vector(outcome)
        weight = vector @ omega.form @ omega.model_b.unit_vector
        conditional_vector = omega.model_b.metric_inverse @ omega.form.T @ vector
        model = omega.model_b
    elif side == "A":
        vector = omega.model_b.outcome_vector(outcome)
        weight = omega.model_a.unit_vector @ omega.form @ vector
        conditional_vector = omega.model_a.metric_inverse @ omega.form @ vector
        model = omega.model_a
    else:
        raise ModelError(f"side must be 'A' or 'B', got {side!r}")
    if weight <= tol:
        raise ZeroProbabilityError(f"conditioning on an outcome of probability {weight:.3g}")
    return State(model, conditional_vector / weight)


def validate_bipartite(omega: BipartiteState, rng: Optional[np.random.Generator] = None,
                       samples: int = 4, tol: float = DEFAULT_TOL) -> BipartiteReport:
    """Check conditions (i)-(iii) and the law of total probability on (sampled) test pairs."""
    model_a, model_b, form = omega.model_a, omega.model_b, omega.form
    tests_a = sample_tests(model_a, rng, samples)
    tests_b = sample_tests(model_b, rng, samples)
    violations = {name: 0.0 for name in
                  ("normalization", "nonnegativity", "marginals", "conditionals", "total_probability")}

    closed_a = form @ model_b.unit_vector
    closed_b = form.T @ model_a.unit_vector

    for E in tests_a:
        row_sums = []
        for F in tests_b:
            table = E @ form @ F.T
            violations["normalization"] = max(violations["normalization"], abs(table.sum() - 1.0))
            violations["nonnegativity"] = max(violations["nonnegativity"], max(0.0, -table.min()))
            row_sums.append(table.sum(axis=1))
        row_sums = np.array(row_sums)
        spread = np.max(row_sums.max(axis=0) - row_sums.min(axis=0))
        drift = np.max(np.abs(row_sums - E @ closed_a))
        violations["marginals"] = max(violations["marginals"], float(spread), float(drift))

    for F in tests_b:
        col_sums = np.array([(E @ form @ F.T).sum(axis=0) for E in tests_a])
        spread = np.max(col_sums.max(axis=0) - col_sums.min(axis=0))
        violations["marginals"] = max(violations["marginals"], float(spread))

    # (iii) conditionals and the law of total probability, on every sampled test pair
    for E in tests_a:
        for F in tests_b:
            weights_b = F @ closed_b
            for x in E:
                weight = x @ closed_a
                if weight > tol:
                    cond = model_b.metric_inverse @ form.T @ x / weight
                    violations["conditionals"] = max(violations["conditionals"],
                                                     state_violation(model_b, cond))
                recovered = 0.0
                for y, weight_y in zip(F, weights_b):
                    if weight_y > tol:
                        cond_y = model_a.metric_inverse @ form @ y / weight_y
                        recovered += weight_y * float(x @ model_a.metric @ cond_y)
                violations["total_probability"] = max(violations["total_probability"],
                                                      abs(recovered - weight))
            for y, weight_y in zip(F, weights_b):
                if weight_y > tol:
                    cond = model_a.metric_inverse @ form @ y / weight_y
                    violations["conditionals"] = max(violations["conditionals"],
                                                     state_violation(model_a, cond))

    worst = max(violations.values())
    return BipartiteReport(
        passed=worst <= tol,
        worst_violation=worst,
        violations=violations,
        tests_checked=len(tests_a) * len(tests_b),
    )


def conditioning_map(omega: BipartiteState, rng: Optional[np.random.Generator] = None,
                     samples: int = 4, tol: float = DEFAULT_TOL) -> ConditioningMap:
    """The unique positive linear ω̂ : E(A) -> V(B) with ω̂(x̂)(y) = ω(x, y)."""
    model_a, model_b = omega.model_a, omega.model_b
    matrix = model_b.metric_inverse @ omega.form.T
    closed_a = omega.form @ model_b.unit_vector

    negativity = 0.0
    reproduction = 0.0
    conditioning = 0.0
    tests_b = sample_tests(model_b, rng, samples)
    for E in sample_tests(model_a, rng, samples):
        for x in E:
            image = matrix @ x
            weight = float(x @ closed_a)
            if model_b.is_jordan:
                lowest = spectral_decompose(Element(model_b.algebra, image)).eigenvalues.min()
                negativity = max(negativity, max(0.0, -float(lowest)))
            elif weight > tol:
                negativity = max(negativity, state_violation(model_b, image / weight))
            else:
                negativity = max(negativity, float(np.abs(image).max()))
            for F in tests_b:
                direct = x @ omega.form @ F.T
                through_map = F @ model_b.metric @ image
                reproduction = max(reproduction, float(np.abs(direct - through_map).max()))
            if weight > tol:
                cond = model_b.metric_inverse @ omega.form.T @ x / weight
                conditioning = max(conditioning, float(np.abs(image - weight * cond).max()))

    return ConditioningMap(
        source=model_a,
        target=model_b,
        matrix=matrix,
        worst_negativity=negativity,
        reproduction_residual=reproduction,
        conditioning_residual=conditioning,
    )


# --- Processes ------------------------------------------------------------

def cone_preservation(T: Process, rng: np.random.Generator, samples: int = 50) -> float:
    """Smallest eigenvalue of T(a) over sampled unit-trace cone points a (interior and pure)."""
    algebra = T.domain
    worst = float("inf")
    for _ in range(samples):
        points = [random_interior(algebra, rng)] + list(random_frame(algebra, rng))
        for a in points:
            a = a / trace_inner_product(a, unit(algebra))
            image = T(a)
            worst = min(worst, float(spectral_decompose(image).eigenvalues.min()))
    return worst


def effect_preservation(T: Process) -> float:
    """Smallest eigenvalue of u - T*(u); nonnegative iff T maps effects to effects."""
    dual_unit = T.trace_adjoint()(unit(T.codomain))
    return float(spectral_decompose(unit(T.domain) - dual_unit).eigenvalues.min())


# --- Sharpness and spectrality --------------------------------------------

def _face_dimension(face: np.ndarray) -> int:
    if face.shape[0] == 0:
        return -1
    return int(np.linalg.matrix_rank(face - face[0], tol=1e-9)) if face.shape[0] > 1 else 0


def sharpness_check(model: Model, rng: Optional[np.random.Generator] = None,
                    samples: int = 8, tol: float = DEFAULT_TOL) -> SharpnessReport:
    """Does every outcome have exactly one state assigning it probability 1?"""
    if not model.is_jordan:
        offending = []
        for x, name in enumerate(model.outcomes):
            face = model.vertices[model.vertices[:, x] >= 1.0 - tol]
            if face.shape[0] != 1:
                offending.append({
                    "outcome": name,
                    "face_vertices": int(face.shape[0]),
                    "face_dimension": _face_dimension(face),
                })
        return SharpnessReport(
            sharp=not offending,
            worst_residual=float(max((o["face_dimension"] for o in offending), default=0)),
            offending=offending,
            outcomes_checked=len(model.outcomes),
        )

    # Jordan: δ_x = x; the face {α : α(x) = 1} lies in the Peirce space U_x(E),
    # which is one-dimensional exactly when x is primitive.
    rng = rng if rng is not None else np.random.default_rng(0)
    algebra = model.algebra
    u = unit(algebra)
    worst = 0.0
    offending = []
    checked = 0
    for _ in range(samples):
        for p in random_frame(algebra, rng):
            checked += 1
            certainty = abs(trace_inner_product(p, p) - 1.0)
            normalization = abs(trace_inner_product(p, u) - 1.0)
            U = quadratic_rep(p).matrix
            singular_values = np.linalg.svd(U, compute_uv=False)
            peirce_rank = int(np.sum(singular_values > 1e-6))
            residual = max(certainty, normalization, *frame_residuals((p, u - p)).values())
            worst = max(worst, residual)
            if peirce_rank != 1 or residual > tol:
                offending.append({
                    "outcome": repr(p),
                    "face_vertices": None,
                    "face_dimension": peirce_rank - 1,
                })
    return SharpnessReport(sharp=not offending, worst_residual=worst,
                           offending=offending, outcomes_checked=checked)


def default_delta(model: Model, tol: float = DEFAULT_TOL) -> Dict[int, np.ndarray]:
    """For each outcome, the first listed vertex assigning it probability 1."""
    delta = {}
    for x in range(model.dim):
        support = np.flatnonzero(model.vertices[:, x] >= 1.0 - tol)
        if support.size:
            delta[x] = model.vertices[support[0]]
    return delta


def _check_delta(model: Model, delta: Mapping[int, np.ndarray], tol: float) -> Dict[int, np.ndarray]:
    checked = {}
    for outcome, vector in delta.items():
        x = model.outcome_index(outcome)
        vector = vector.vector if isinstance(vector, State) else np.asarray(vector, dtype=float)
        if abs(vector[x] - 1.0) > tol:
            raise InvalidDeltaError(f"δ for {model.outcomes[x]!r} gives it probability {vector[x]:.6g}, not 1")
        checked[x] = vector
    return checked


def spectrality_decompose(model: Model, alpha: State,
                          delta: Optional[Union[Mapping, Callable[[Element], State]]] = None,
                          tol: float = DEFAULT_TOL) -> SpectralityResult:
    """Find a test E with α = Σ_{x∈E} α(x) δ_x."""
    if not alpha.model.same_as(model):
        raise ModelMismatchError("state belongs to a different model")

    if model.is_jordan:
        if delta is not None and not callable(delta):
            raise InvalidDeltaError("Jordan outcomes are continuous; pass δ as a callable x -> δ_x")
        spectral = spectral_decompose(alpha.element, tol)
        frame = spectral.frame
        weights = np.array([alpha.probability(p) for p in frame])
        total = np.zeros(model.dim)
        for weight, p in zip(weights, frame):
            delta_x = delta(p) if callable(delta) else State(model, p.coords)
            if abs(delta_x.probability(p) - 1.0) > tol:
                raise InvalidDeltaError(f"δ_x(x) = {delta_x.probability(p):.6g}, not 1")
            total = total + weight * delta_x.vector
        residual = float(np.abs(total - alpha.vector).max())
        return SpectralityResult(success=residual <= tol, test=frame, weights=weights, residual=residual)

    delta = _check_delta(model, delta if delta is not None else default_delta(model, tol), tol)
    best = SpectralityResult(success=False)
    for test in model.tests:
        if any(x not in delta for x in test):
            continue
        weights = alpha.vector[list(test)]
        candidate = sum(w * delta[x] for w, x in zip(weights, test))
        residual = float(np.abs(candidate - alpha.vector).max())
        if residual < best.residual:
            best = SpectralityResult(
                success=residual <= tol,
                test=tuple(model.outcomes[x] for x in test),
                weights=np.array(weights),
                residual=residual,
            )
    return best


def model_spectrality_check(model: Model, rng: Optional[np.random.Generator] = None,
                            samples: int = 20, tol: float = DEFAULT_TOL,
                            max_families: int = 4096) -> ModelSpectralityReport:
    """
    Is the model spectral for SOME outcome-indexed family Δ?

    Finite models: every admissible Δ (one vertex with δ_x(x) = 1 per outcome)
    is tried against the vertices, their pairwise midpoints and the centroid.
    Jordan models: sampled states are decomposed with δ_x = x.
    """
    if model.is_jordan:
        rng = rng if rng is not None else np.random.default_rng(0)
        worst = 0.0
        for _ in range(samples):
            a = random_interior(model.algebra, rng)
            a = a / trace_inner_product(a, unit(model.algebra))
            worst = max(worst, spectrality_decompose(model, State(model, a.coords), tol=tol).residual)
        return ModelSpectralityReport(spectral=worst <= tol, probes=samples,
                                      delta_families_tried=1, worst_residual=worst)

    vertices = model.vertices
    probes = [v for v in vertices]
    probes += [(v + w) / 2 for v, w in itertools.combinations(vertices, 2)]
    probes.append(vertices.mean(axis=0))

    candidates = [np.flatnonzero(vertices[:, x] >= 1.0 - tol) for x in range(model.dim)]
    if any(c.size == 0 for c in candidates):
        return ModelSpectralityReport(spectral=False, probes=len(probes), delta_families_tried=0,
                                      worst_residual=1.0)
    tried = 0
    worst_best = float("inf")
    for choice in itertools.product(*candidates):
        tried += 1
        if tried > max_families:
            break
        delta = {x: vertices[v] for x, v in enumerate(choice)}
        worst = 0.0
        for probe in probes:
            result = spectrality_decompose(model, State(model, probe), delta=delta, tol=tol)
            worst = max(worst, result.residual)
            if not result.success:
                break
        worst_best = min(worst_best, worst)
        if worst <= tol:
            witness = {model.outcomes[x]: int(v) for x, v in enumerate(choice)}
            return ModelSpectralityReport(spectral=True, probes=len(probes),
                                          delta_families_tried=tried, witness=witness,
                                          worst_residual=worst)
    return ModelSpectralityReport(spectral=False, probes=len(probes),
                                  delta_families_tried=min(tried, max_families),
                                  worst_residual=worst_best)
