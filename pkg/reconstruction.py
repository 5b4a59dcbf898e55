"""
Reconstruction Module
=====================
Checks, on concrete models, each step from operational structure back to a
Euclidean Jordan algebra:
- the self-dualizing inner product <a, b> := η(a, b̄)
- self-duality in both directions, with separating witnesses
- recovery of the Jordan product from squares of unique spectral representations
- dilation of states to correlating bipartite states
- bit classification by ball dimension
"""
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from conjugates import Conjugate, UnsupportedBackendError
from config import DEFAULT_TOL
from jordan_algebra import (
    OUTSIDE,
    Element,
    cone_membership,
    random_element,
    random_frame,
    random_interior,
    random_outside,
    random_state,
    spectral_decompose,
    trace_inner_product,
    unit,
)
from probabilistic_models import (
    BipartiteState,
    Model,
    State,
    marginal,
    spectrality_decompose,
)

UNHALVED_NOTE = ("the product (a + b)² − a² − b² without the factor ½ gives u∘a = 2a; "
                 "the recovered product uses ½((a + b)² − a² − b²)")

BIT_LABELS = {
    1: "classical bit",
    2: "real bit",
    3: "complex bit",
    5: "quaternionic bit",
}
NON_QUANTUM_LABEL = "non-quantum spin factor"


class SpectralFailure(ValueError):
    """Spectral data did not reconstruct the element."""


class RankError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class EtaForm:
    """Gram matrix of <a, b> := η(a, b̄) on the coordinate basis of E(A)."""
    conjugate: Conjugate
    gram: np.ndarray
    symmetry_residual: float
    min_eigenvalue: float

    @property
    def model(self) -> Model:
        return self.conjugate.model

    @property
    def is_valid(self) -> bool:
        return self.symmetry_residual <= 1e-12 and self.min_eigenvalue > 0.0

    def inner(self, a: Element, b: Element) -> float:
        return float(a.coords @ self.gram @ b.coords)


@dataclass(frozen=True, eq=False)
class SharpRepresentation:
    """a = Σ t_i e_i with t_0 > t_1 > ... and jointly orthogonal sharp effects e_i."""
    element: Element
    values: np.ndarray
    effects: Tuple[Element, ...]
    frame: Tuple[Element, ...]
    level_sets: Tuple[Tuple[int, ...], ...]

    def reconstruct(self) -> Element:
        total = np.zeros(self.element.algebra.dim)
        for value, e in zip(self.values, self.effects):
            total = total + value * e.coords
        return Element(self.element.algebra, total)

    def residual(self) -> float:
        return float(np.abs(self.reconstruct().coords - self.element.coords).max())

    def witness(self, index: int) -> Element:
        """The state e / <e, u>, which assigns e probability 1."""
        e = self.effects[index]
        return e / trace_inner_product(e, unit(e.algebra))

    def map_values(self, f) -> Element:
        total = np.zeros(self.element.algebra.dim)
        for value, e in zip(self.values, self.effects):
            total = total + f(float(value)) * e.coords
        return Element(self.element.algebra, total)


@dataclass
class EtaReport:
    passed: bool
    symmetry_residual: float
    min_eigenvalue: float
    frame_norm_residual: float
    trace_form_residual: float
    unit_norm: float


@dataclass
class SelfDualityReport:
    passed: bool
    forward_min: float
    converse_failures: int
    worst_witness_value: float
    order_isomorphism_residual: float
    samples: int


@dataclass
class ProductRecoveryReport:
    passed: bool
    table_residual: float
    bilinearity_residual: float
    jordan_identity_residual: float
    unit_residual: float
    outcome_residual: float
    samples: int
    notes: List[str] = field(default_factory=list)
    details: Dict[str, float] = field(default_factory=dict)


@dataclass
class CorrelationResult:
    success: bool
    bijection: Dict[int, int] = field(default_factory=dict)
    residual: float = 0.0
    reason: str = ""


@dataclass
class BitClassification:
    d: int
    label: str
    sphere_residual: float
    passed: bool


@dataclass
class BitReport:
    is_bit: bool
    rank: int
    worst_residual: float
    samples: int


# --- Self-dualizing inner product --------------------------------------------

def eta_inner_product(conjugate: Conjugate, rng: Optional[np.random.Generator] = None,
                      samples: int = 20) -> Tuple[EtaForm, EtaReport]:
    """Assemble <a, b> := η(a, b̄) and verify it is a positive definite inner product."""
    rng = rng if rng is not None else np.random.default_rng(0)
    model = conjugate.model
    algebra = model.algebra
    gram = np.array(conjugate.eta.form) @ conjugate.conjugation
    symmetry = float(np.abs(gram - gram.T).max())
    lowest = float(np.linalg.eigvalsh(0.5 * (gram + gram.T)).min())
    form = EtaForm(conjugate=conjugate, gram=gram, symmetry_residual=symmetry, min_eigenvalue=lowest)

    # <a, a> = (1/n) Σ t_x² for a = Σ t_x x over a frame
    frame_worst = 0.0
    for _ in range(samples):
        frame = random_frame(algebra, rng)
        t = rng.standard_normal(len(frame))
        a = Element(algebra, sum(t_x * x.coords for t_x, x in zip(t, frame)))
        frame_worst = max(frame_worst, abs(form.inner(a, a) - float(t @ t) / model.rank))

    trace_form = float(np.abs(gram - np.array(algebra.gram) / model.rank).max())
    u = unit(algebra)
    report = EtaReport(
        passed=form.is_valid and max(frame_worst, trace_form) <= 1e-10,
        symmetry_residual=symmetry,
        min_eigenvalue=lowest,
        frame_norm_residual=frame_worst,
        trace_form_residual=trace_form,
        unit_norm=form.inner(u, u),
    )
    return form, report


def self_duality_check(form: EtaForm, rng: Optional[np.random.Generator] = None,
                       samples: int = 200, tol: float = DEFAULT_TOL) -> SelfDualityReport:
    """
    a ∈ E₊ iff <a, b> ≥ 0 for every b ∈ E₊.

    Forward: sampled cone pairs have nonnegative inner product.
    Converse: every sampled non-cone element is separated by the witness
    from cone_membership. Also checks that η̂ is an order-isomorphism.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    algebra = form.model.algebra

    forward = math.inf
    for _ in range(samples):
        a = random_interior(algebra, rng, low=0.0, high=1.0)
        b = random_frame(algebra, rng)[0] if rng.random() < 0.5 else random_interior(algebra, rng)
        forward = min(forward, form.inner(a, b))

    failures = 0
    worst_witness = -math.inf
    for _ in range(samples):
        a = random_outside(algebra, rng)
        membership = cone_membership(a, tol)
        if membership.status != OUTSIDE or membership.witness is None:
            failures += 1
            continue
        value = form.inner(a, membership.witness)
        worst_witness = max(worst_witness, value)
        if value > -tol * abs(membership.min_eigenvalue) / 2:
            failures += 1

    # η̂ : E(A) -> V(Ā); on Jordan models its matrix is C / n
    conjugate = form.conjugate
    hat = np.array(algebra.gram_inverse) @ np.array(conjugate.eta.form).T
    iso_residual = 0.0
    singular_values = np.linalg.svd(hat, compute_uv=False)
    if singular_values.min() <= 1e-12:
        iso_residual = math.inf
    else:
        hat_inverse = np.linalg.inv(hat)
        for _ in range(max(samples // 10, 1)):
            for x in random_frame(algebra, rng):
                image = spectral_decompose(Element(algebra, hat @ x.coords)).eigenvalues.min()
                back = spectral_decompose(Element(algebra, hat_inverse @ x.coords)).eigenvalues.min()
                iso_residual = max(iso_residual, max(0.0, -float(image)), max(0.0, -float(back)))

    return SelfDualityReport(
        passed=forward >= -1e-12 and failures == 0 and iso_residual <= 1e-10,
        forward_min=forward,
        converse_failures=failures,
        worst_witness_value=worst_witness,
        order_isomorphism_residual=iso_residual,
        samples=samples,
    )


# --- Spectral representations and the recovered product ------------------

def unique_spectral_rep(a: Element, tol: float = DEFAULT_TOL) -> SharpRepresentation:
    """Merge equal eigenvalues of a's spectral decomposition into level sets."""
    spectral = spectral_decompose(a, tol)
    level_sets: List[List[int]] = []
    heads: List[float] = []
    for index, value in enumerate(spectral.eigenvalues):
        if heads and heads[-1] - value <= tol * max(1.0, abs(heads[-1])):
            level_sets[-1].append(index)
        else:
            level_sets.append([index])
            heads.append(float(value))

    values = []
    effects = []
    for members in level_sets:
        values.append(float(np.mean(spectral.eigenvalues[members])))
        effects.append(Element(a.algebra, sum(spectral.frame[i].coords for i in members)))
    representation = SharpRepresentation(
        element=a,
        values=np.array(values),
        effects=tuple(effects),
        frame=spectral.frame,
        level_sets=tuple(tuple(members) for members in level_sets),
    )
    if representation.residual() > max(tol, 1e-9) * (1.0 + float(np.abs(a.coords).max())):
        raise SpectralFailure(f"spectral representation misses the element by {representation.residual():.3g}")
    return representation


def recovered_square(a: Element, tol: float = DEFAULT_TOL) -> Element:
    return unique_spectral_rep(a, tol).map_values(lambda t: t * t)


def recovered_product(a: Element, b: Element, tol: float = DEFAULT_TOL) -> Element:
    """a • b := ½((a + b)² − a² − b²)."""
    return 0.5 * (recovered_square(a + b, tol) - recovered_square(a, tol) - recovered_square(b, tol))


def _relative(difference: np.ndarray, reference: np.ndarray) -> float:
    return float(np.abs(difference).max() / (1.0 + np.abs(reference).max()))


def recover_jordan_product(conjugate: Conjugate, rng: Optional[np.random.Generator] = None,
                           samples: int = 100, tol: float = 1e-8) -> Tuple[np.ndarray, ProductRecoveryReport]:
    """
    Recover the product from squares alone and compare with the native one.

    Returns the structure constants table[i, j] = e_i • e_j (coordinates) and
    a report covering bilinearity, the Jordan identity, the unit, and whether
    outcomes are •-primitive idempotents forming •-frames.
    """
    if not conjugate.model.is_jordan:
        raise UnsupportedBackendError("product recovery runs on Jordan models")
    rng = rng if rng is not None else np.random.default_rng(0)
    algebra = conjugate.algebra
    basis = [Element(algebra, row) for row in np.eye(algebra.dim)]

    table = np.empty((algebra.dim, algebra.dim, algebra.dim))
    table_residual = 0.0
    for i, e_i in enumerate(basis):
        for j in range(i, algebra.dim):
            recovered = recovered_product(e_i, basis[j]).coords
            table[i, j] = table[j, i] = recovered
            native = algebra.product(e_i.coords, basis[j].coords)
            table_residual = max(table_residual, _relative(recovered - native, native))

    def product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, table)

    bilinearity = 0.0
    identity_residual = 0.0
    unit_residual = 0.0
    u = unit(algebra)
    for _ in range(samples):
        a, b, c = (random_element(algebra, rng) for _ in range(3))
        s = float(rng.standard_normal())
        lhs = recovered_product(a + s * c, b).coords
        rhs = recovered_product(a, b).coords + s * recovered_product(c, b).coords
        bilinearity = max(bilinearity, _relative(lhs - rhs, rhs))

        a2 = product(a.coords, a.coords)
        left = product(a2, product(a.coords, b.coords))
        right = product(a.coords, product(a2, b.coords))
        identity_residual = max(identity_residual, _relative(left - right, right))
        unit_residual = max(unit_residual, _relative(recovered_product(u, a).coords - a.coords, a.coords))

    # outcomes are •-primitive idempotents and tests are •-frames
    outcome_residual = 0.0
    for _ in range(max(samples // 10, 1)):
        frame = random_frame(algebra, rng)
        total = np.zeros(algebra.dim)
        for i, p in enumerate(frame):
            total = total + p.coords
            outcome_residual = max(outcome_residual, float(np.abs(product(p.coords, p.coords) - p.coords).max()))
            for q in frame[i + 1:]:
                outcome_residual = max(outcome_residual, float(np.abs(product(p.coords, q.coords)).max()))
            L = np.einsum("i,ijk->kj", p.coords, table)
            L_square = np.einsum("i,ijk->kj", product(p.coords, p.coords), table)
            peirce_rank = int(np.sum(np.linalg.svd(2.0 * L @ L - L_square, compute_uv=False) > 1e-6))
            if peirce_rank != 1:
                outcome_residual = max(outcome_residual, 1.0)
        outcome_residual = max(outcome_residual, float(np.abs(total - u.coords).max()))

    # the unhalved reading doubles the action of the unit
    probe = random_element(algebra, rng)
    unhalved = 2.0 * recovered_product(u, probe).coords
    defect = float(np.abs(unhalved - probe.coords).max())

    worst = max(table_residual, bilinearity, identity_residual, unit_residual, outcome_residual)
    report = ProductRecoveryReport(
        passed=worst <= tol,
        table_residual=table_residual,
        bilinearity_residual=bilinearity,
        jordan_identity_residual=identity_residual,
        unit_residual=unit_residual,
        outcome_residual=outcome_residual,
        samples=samples,
        notes=[UNHALVED_NOTE],
        details={"unhalved_unit_defect": defect},
    )
    return table, report


# --- Correlation ------------------------------------------------------------

def correlation_dilation(conjugate: Conjugate, alpha: State, tol: float = DEFAULT_TOL) -> BipartiteState:
    """
    ω(x, ȳ) := Σ_z t_z δ_z(x) δ_z̄(ȳ) over the spectral frame of α = Σ t_z δ_z.

    The result has marginal ω₁ = α and correlates the frame with its conjugate.
    """
    model = conjugate.model
    if not alpha.model.same_as(model):
        raise UnsupportedBackendError("state belongs to a different model")
    spectral = spectral_decompose(alpha.element, tol)
    if not spectral.is_valid(max(tol, 1e-9)):
        raise SpectralFailure("spectral decomposition of the state failed")
    G = np.array(model.algebra.gram)
    C = conjugate.conjugation
    form = np.zeros((model.dim, model.dim))
    for t_z, z in zip(spectral.eigenvalues, spectral.frame):
        form += t_z * np.outer(G @ z.coords, G @ (C @ z.coords))
    return BipartiteState(model, conjugate.conjugate_model, form, label="dilation")


def correlating_check(omega: BipartiteState, E: Sequence, F: Sequence,
                      tol: float = 1e-10) -> CorrelationResult:
    """
    Is there a non-empty partial bijection f : E -> F with
    ω(x, y) > 0 iff y = f(x)?
    """
    table = omega.table(E, F)
    support = table > tol
    if not support.any():
        return CorrelationResult(success=False, reason="empty support")
    if (support.sum(axis=1) > 1).any() or (support.sum(axis=0) > 1).any():
        return CorrelationResult(success=False, reason="support is not a partial bijection")

    first = marginal(omega, "A")
    second = marginal(omega, "B")
    bijection = {}
    residual = 0.0
    for i, j in zip(*np.nonzero(support)):
        bijection[int(i)] = int(j)
        joint = table[i, j]
        residual = max(residual,
                       abs(joint - first.probability(E[i])),
                       abs(joint - second.probability(F[j])))
    return CorrelationResult(success=residual <= max(tol, 1e-9), bijection=bijection, residual=residual)


# --- Bits ---------------------------------------------------------------------

def classify_bit(model: Model, rng: Optional[np.random.Generator] = None,
                 samples: int = 50) -> BitClassification:
    """Ball dimension d = dim V(A) − 1 of a rank-2 Jordan model, and its label."""
    if not model.is_jordan:
        raise UnsupportedBackendError("bit classification needs a Jordan model")
    if model.rank != 2:
        raise RankError(f"bits have rank 2, got rank {model.rank}")
    rng = rng if rng is not None else np.random.default_rng(0)
    algebra = model.algebra
    d = algebra.dim - 1
    label = BIT_LABELS.get(d, NON_QUANTUM_LABEL)

    u = unit(algebra)
    center = u / 2
    radius_squared = 0.5
    residual = 0.0
    for _ in range(samples):
        # pure states sit on the sphere of radius √½ around u/2
        p = random_frame(algebra, rng)[0]
        residual = max(residual, abs(trace_inner_product(p - center, p - center) - radius_squared))
        # and every point of that sphere in the trace-one plane is pure
        v = random_element(algebra, rng)
        v = v - (trace_inner_product(v, u) / trace_inner_product(u, u)) * u
        length = math.sqrt(trace_inner_product(v, v))
        if length < 1e-12:
            continue
        q = center + (math.sqrt(radius_squared) / length) * v
        values = spectral_decompose(q).eigenvalues
        residual = max(residual, abs(values[0] - 1.0), abs(values[-1]))
    return BitClassification(d=d, label=label, sphere_residual=residual, passed=residual <= 1e-9)


def bit_check(model: Model, rng: Optional[np.random.Generator] = None, samples: int = 50,
              tol: float = 1e-9) -> BitReport:
    """Rank 2, and every sampled state is t δ_x + (1 − t) δ_y over a single test."""
    rng = rng if rng is not None else np.random.default_rng(0)
    if model.rank != 2:
        return BitReport(is_bit=False, rank=model.rank, worst_residual=math.inf, samples=0)
    worst = 0.0
    for _ in range(samples):
        if model.is_jordan:
            alpha = State(model, random_state(model.algebra, rng).coords)
        else:
            weights = rng.dirichlet(np.ones(model.vertices.shape[0]))
            alpha = State(model, weights @ model.vertices)
        worst = max(worst, spectrality_decompose(model, alpha).residual)
    return BitReport(is_bit=worst <= tol, rank=model.rank, worst_residual=worst, samples=samples)
