"""
Conjugates and Filters Module
=============================
Builds the structure that turns a sharp, spectral model into a self-dual,
homogeneous one:
- conjugate systems (Ā, x ↦ x̄, η) with η(x, ȳ) = δ_xy / n
- the EPR vector Ψ for complex quantum models
- symmetric filters Φ = U_c with prescribed attenuation coefficients
- p-reversibility, homogeneity transport and state preparation by filters
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import unitary_group

from config import DEFAULT_TOL
from jordan_algebra import (
    INSIDE,
    Algebra,
    Element,
    LinearMap,
    combine,
    cone_membership,
    frame_residuals,
    inverse,
    make_algebra,
    quadratic_rep,
    random_element,
    random_frame,
    random_interior,
    spectral_decompose,
    sqrt,
    trace_inner_product,
    unit,
)
from probabilistic_models import (
    BipartiteState,
    Model,
    State,
    cone_preservation,
    conditional,
    effect_preservation,
    is_nonsingular,
    jordan_model,
    maximally_mixed,
    spectrality_decompose,
)


class FilterError(ValueError):
    """Base error for conjugate and filter construction."""


class CoefficientRangeError(FilterError):
    pass


class InvalidFrameError(FilterError):
    pass


class ConeInteriorError(FilterError):
    pass


class SingularStateError(FilterError):
    pass


class UnsupportedBackendError(FilterError):
    pass


@dataclass(frozen=True, eq=False)
class Conjugate:
    """A conjugate system for a Jordan model: Ā, the isomorphism x ↦ x̄, and η on A ⊗ Ā."""
    model: Model
    conjugate_model: Model
    conjugation: np.ndarray
    eta: BipartiteState

    @property
    def algebra(self) -> Algebra:
        return self.model.algebra

    def bar(self, a: Element) -> Element:
        return Element(self.algebra, self.conjugation @ a.coords)

    def eta_value(self, a: Element, b: Element) -> float:
        """η(a, b̄)."""
        return self.eta.evaluate(a.coords, self.conjugation @ b.coords)

    def delta(self, x: Element) -> State:
        """δ_x := η_{1|x̄}."""
        return conditional(self.eta, self.bar(x), side="A")

    def conjugate_map(self, T: LinearMap) -> LinearMap:
        """φ̄ = C φ C on Ā."""
        C = self.conjugation
        return LinearMap(T.domain, T.codomain, C @ T.matrix @ C)


@dataclass(frozen=True, eq=False)
class Filter:
    """A symmetric filter U_c attenuating outcome x of `frame` by t_x."""
    model: Model
    process: LinearMap
    frame: Tuple[Element, ...]
    coefficients: np.ndarray

    @property
    def root(self) -> Element:
        """c = Σ √t_x x."""
        return combine(self.frame, np.sqrt(self.coefficients))

    def __call__(self, a: Element) -> Element:
        return self.process(a)

    def apply(self, alpha: State) -> State:
        return State(self.model, self.process.matrix @ alpha.vector)


@dataclass
class EprReport:
    passed: bool
    rank: int
    samples: int
    worst_deviation: float
    basis_deviation: float
    eta_deviation: float
    pure_same: float
    pure_orthogonal: float


@dataclass
class ReversibilityReport:
    reversible: bool
    p: float
    reversing: Optional[LinearMap] = None
    residual: float = float("inf")
    reversing_is_process: bool = False


@dataclass
class AutomorphismReport:
    passed: bool
    forward_min_eigenvalue: float
    inverse_min_eigenvalue: float
    samples: int


@dataclass
class TwoPathReport:
    """Spectrality of α reached through its conjugate (Σ α(x) δ_x) and through a preparing filter."""
    passed: bool
    decomposition_residual: float
    preparation_residual: float
    scale: float
    details: Dict[str, float] = field(default_factory=dict)


# --- Conjugates -----------------------------------------------------------

def make_conjugate(model: Model) -> Conjugate:
    """
    Canonical conjugate of a Jordan model.

    Ā is realized on the same algebra; x ↦ x̄ is entrywise complex conjugation
    of the (embedded) matrix, the identity on real and spin factor coordinates.
    η(a, b̄) = (1/n) <a, b>.
    """
    if not model.is_jordan:
        raise UnsupportedBackendError("conjugates are only constructed for Jordan models")
    algebra = model.algebra
    C = np.array(algebra.conjugation)
    form = (algebra.gram @ C) / model.rank
    bar_name = f"{model.name}_bar" if model.name else ""
    conjugate_model = jordan_model(algebra, name=bar_name)
    eta = BipartiteState(model, conjugate_model, form, label="eta")
    return Conjugate(model=model, conjugate_model=conjugate_model, conjugation=C, eta=eta)


def correlation_residual(conjugate: Conjugate, rng: np.random.Generator,
                         samples: int = 50) -> float:
    """max |η(x, ȳ) − δ_xy / n| over pairs from sampled frames."""
    n = conjugate.model.rank
    worst = 0.0
    for _ in range(samples):
        frame = random_frame(conjugate.algebra, rng)
        for i, x in enumerate(frame):
            for j, y in enumerate(frame):
                expected = 1.0 / n if i == j else 0.0
                worst = max(worst, abs(conjugate.eta_value(x, y) - expected))
    return worst


def epr_vector(n: int) -> np.ndarray:
    """Ψ = (1/√n) Σ_i e_i ⊗ e_i."""
    return np.eye(n).reshape(-1).astype(complex) / np.sqrt(n)


def epr_check(n: int, rng: Optional[np.random.Generator] = None, samples: int = 100,
              tol: float = 1e-12) -> EprReport:
    """
    Check that the EPR vector's correlations are the normalized trace form.

    <(a ⊗ b̄) Ψ, Ψ> = Tr(ab) / n on random Hermitian pairs, with Ψ invariant
    under U ⊗ Ū, and matching η from the algebra-side conjugate.
    """
    if n < 2:
        raise FilterError(f"EPR check needs n >= 2, got {n}")
    rng = rng if rng is not None else np.random.default_rng(0)
    algebra = make_algebra("complex", n)
    conjugate = make_conjugate(jordan_model(algebra))
    psi = epr_vector(n)

    def correlation(a: np.ndarray, b: np.ndarray) -> float:
        return float(np.real(np.vdot(psi, np.kron(a, b.conj()) @ psi)))

    worst = 0.0
    eta_worst = 0.0
    for _ in range(samples):
        a = random_element(algebra, rng)
        b = random_element(algebra, rng)
        value = correlation(a.matrix(), b.matrix())
        worst = max(worst, abs(value - np.real(np.trace(a.matrix() @ b.matrix())) / n))
        eta_worst = max(eta_worst, abs(value - conjugate.eta_value(a, b)))

    basis_worst = 0.0
    for _ in range(min(samples, 20)):
        U = unitary_group.rvs(n, random_state=rng)
        basis_worst = max(basis_worst, float(np.abs(np.kron(U, U.conj()) @ psi - psi).max()))

    frame = random_frame(algebra, rng)
    same = abs(correlation(frame[0].matrix(), frame[0].matrix()) - 1.0 / n)
    orthogonal = abs(correlation(frame[0].matrix(), frame[1].matrix()))

    return EprReport(
        passed=max(worst, eta_worst, basis_worst, same, orthogonal) <= tol,
        rank=n,
        samples=samples,
        worst_deviation=worst,
        basis_deviation=basis_worst,
        eta_deviation=eta_worst,
        pure_same=same,
        pure_orthogonal=orthogonal,
    )


# --- Filters ----------------------------------------------------------------

def make_filter(model: Model, frame: Sequence[Element], coefficients: Sequence[float],
                tol: float = DEFAULT_TOL) -> Filter:
    """
    The symmetric filter Φ = U_c, c = Σ_x √t_x x.

    Args:
        model: Jordan model the filter acts on
        frame: a Jordan frame E of the model's algebra
        coefficients: attenuation t_x ∈ [0, 1] for each x ∈ E

    Returns:
        Filter with Φ*(x̂) = t_x x̂ and Φ(ρ) = (1/n) Σ t_x δ_x
    """
    if not model.is_jordan:
        raise UnsupportedBackendError("filters are built from Jordan frames")
    frame = tuple(frame)
    t = np.asarray(coefficients, dtype=float).reshape(-1)
    if len(frame) != model.rank or t.shape[0] != len(frame):
        raise InvalidFrameError(f"need {model.rank} frame elements and coefficients, "
                                f"got {len(frame)} and {t.shape[0]}")
    if any(p.algebra != model.algebra for p in frame):
        raise InvalidFrameError("frame elements belong to a different algebra")
    if np.any(t < -tol) or np.any(t > 1.0 + tol):
        raise CoefficientRangeError(f"coefficients must lie in [0, 1], got {t.tolist()}")
    worst = max(frame_residuals(frame).values())
    if worst > max(tol, 1e-8) * 10:
        raise InvalidFrameError(f"not a Jordan frame (residual {worst:.3g})")
    t = np.clip(t, 0.0, 1.0)
    t.setflags(write=False)
    c = combine(frame, np.sqrt(t))
    return Filter(model=model, process=quadratic_rep(c), frame=frame, coefficients=t)


def filter_residuals(phi: Filter, rng: np.random.Generator, samples: int = 20) -> Dict[str, float]:
    """How far Φ is from the filter identities on sampled states."""
    model = phi.model
    algebra = model.algebra
    dual = phi.process.trace_adjoint()
    attenuation = 0.0
    for _ in range(samples):
        a = random_interior(algebra, rng)
        a = a / trace_inner_product(a, unit(algebra))
        image = phi(a)
        for t_x, x in zip(phi.coefficients, phi.frame):
            attenuation = max(attenuation, abs(trace_inner_product(x, image)
                                                - t_x * trace_inner_product(x, a)))
    dual_action = max(float(np.abs(dual(x).coords - t_x * x.coords).max())
                      for t_x, x in zip(phi.coefficients, phi.frame))
    rho = maximally_mixed(model).vector
    expected = sum(t_x * x.coords for t_x, x in zip(phi.coefficients, phi.frame)) / model.rank
    preparation = float(np.abs(phi.process.matrix @ rho - expected).max())
    return {
        "attenuation": attenuation,
        "dual_action": dual_action,
        "mixed_image": preparation,
        "positivity": max(0.0, -cone_preservation(phi.process, rng, samples=max(samples // 4, 1))),
        "effect_bound": max(0.0, -effect_preservation(phi.process)),
    }


def matrix_congruence(algebra: Algebra, N: np.ndarray) -> LinearMap:
    """a ↦ N a N† as a map on coordinates (positive, generally not symmetric)."""
    if not algebra.is_matrix_kind:
        raise UnsupportedBackendError(f"{algebra.label} has no matrix realization")
    N = np.asarray(N)
    columns = []
    for coords in np.eye(algebra.dim):
        A = algebra.to_matrix(coords)
        columns.append(algebra.from_matrix(N @ A @ N.conj().T))
    return LinearMap(algebra, algebra, np.array(columns).T)


def filter_symmetry_check(phi: Union[Filter, LinearMap], conjugate: Conjugate,
                          rng: Optional[np.random.Generator] = None, samples: int = 100) -> float:
    """max |η(Φ* a, b̄) − η(a, Φ̄* b̄)| over random effect pairs."""
    process = phi.process if isinstance(phi, Filter) else phi
    algebra = conjugate.algebra
    if process.domain != algebra or process.codomain != algebra:
        raise UnsupportedBackendError("filter and conjugate act on different algebras")
    rng = rng if rng is not None else np.random.default_rng(0)
    dual = process.trace_adjoint()
    conjugate_dual = conjugate.conjugate_map(process).trace_adjoint()
    C = conjugate.conjugation
    worst = 0.0
    for _ in range(samples):
        a = random_interior(algebra, rng, low=0.0, high=1.0)
        b = random_interior(algebra, rng, low=0.0, high=1.0)
        b_bar = C @ b.coords
        lhs = conjugate.eta.evaluate(dual.matrix @ a.coords, b_bar)
        rhs = conjugate.eta.evaluate(a.coords, conjugate_dual.matrix @ b_bar)
        worst = max(worst, abs(lhs - rhs))
    return worst


def p_reversibility_check(phi: Filter, rng: Optional[np.random.Generator] = None,
                          tol: float = DEFAULT_TOL) -> ReversibilityReport:
    """Find S with S ∘ Φ = p·id, S = (min t)·U_{c⁻¹}."""
    p = float(phi.coefficients.min())
    if p <= tol:
        return ReversibilityReport(reversible=False, p=p)
    rng = rng if rng is not None else np.random.default_rng(0)
    S = quadratic_rep(inverse(phi.root, tol)).scaled(p)
    residual = float(np.abs(S.compose(phi.process).matrix - p * np.eye(phi.process.domain.dim)).max())
    is_process = (cone_preservation(S, rng, samples=10) >= -1e-9
                  and effect_preservation(S) >= -1e-9)
    return ReversibilityReport(
        reversible=residual <= 1e-9 and is_process,
        p=p,
        reversing=S,
        residual=residual,
        reversing_is_process=is_process,
    )


def _require_interior(a: Element, tol: float) -> None:
    membership = cone_membership(a, tol)
    if membership.status != INSIDE:
        raise ConeInteriorError(
            f"element is not in the cone interior (min eigenvalue {membership.min_eigenvalue:.3g})")


def homogeneity_transport(a: Element, b: Element, tol: float = DEFAULT_TOL) -> LinearMap:
    """T = U_{√b} ∘ U_{√a}⁻¹, an order automorphism with T(a) = b."""
    if a.algebra != b.algebra:
        raise ConeInteriorError("elements belong to different algebras")
    _require_interior(a, tol)
    _require_interior(b, tol)
    undo = quadratic_rep(inverse(sqrt(a, tol), tol))
    return quadratic_rep(sqrt(b, tol)).compose(undo)


def order_automorphism_check(T: LinearMap, rng: np.random.Generator, samples: int = 100,
                             tol: float = 1e-9) -> AutomorphismReport:
    """T and T⁻¹ both map sampled cone points into the cone."""
    forward = cone_preservation(T, rng, samples)
    backward = cone_preservation(T.inverse(), rng, samples)
    return AutomorphismReport(
        passed=min(forward, backward) >= -tol,
        forward_min_eigenvalue=forward,
        inverse_min_eigenvalue=backward,
        samples=samples,
    )


def prepare_state(model: Model, alpha: State, tol: float = DEFAULT_TOL) -> Filter:
    """
    A p-reversible symmetric filter with Φ(ρ) = α / (n · max s),
    where α's cone element is Σ s_x x.
    """
    if not model.is_jordan:
        raise UnsupportedBackendError("state preparation by filters needs a Jordan model")
    if not is_nonsingular(alpha, tol):
        raise SingularStateError("singular states cannot be prepared by a reversible filter")
    spectral = spectral_decompose(alpha.element, tol)
    s = spectral.eigenvalues
    return make_filter(model, spectral.frame, s / s.max(), tol)


def filter_homogeneity(a: Element, tol: float = DEFAULT_TOL) -> Tuple[Filter, float]:
    """
    Reach an interior element from u with a filter: a = scale · Φ(u).

    Returns the p-reversible filter built on a's spectral frame and the scale
    max_x t_x of a's eigenvalues.
    """
    _require_interior(a, tol)
    spectral = spectral_decompose(a, tol)
    scale = float(spectral.eigenvalues.max())
    model = jordan_model(a.algebra)
    return make_filter(model, spectral.frame, spectral.eigenvalues / scale, tol), scale


def filter_preparation_spectrality(conjugate: Conjugate, alpha: State,
                                   tol: float = 1e-9) -> TwoPathReport:
    """
    Two routes to spectrality for a nonsingular state α:
    the decomposition α = Σ α(x) δ_x with δ_x from the conjugate, and
    α = n · max(s) · Φ(ρ) for the filter preparing it.
    """
    model = conjugate.model
    spectral = spectral_decompose(alpha.element)
    decomposition = spectrality_decompose(model, alpha, delta=conjugate.delta)

    phi = prepare_state(model, alpha)
    scale = model.rank * float(spectral.eigenvalues.max())
    prepared = phi.apply(maximally_mixed(model))
    preparation = float(np.abs(scale * prepared.vector - alpha.vector).max())
    through_deltas = sum(t_x * conjugate.delta(x).vector
                         for t_x, x in zip(phi.coefficients, phi.frame)) / model.rank
    delta_route = float(np.abs(prepared.vector - through_deltas).max())
    return TwoPathReport(
        passed=max(decomposition.residual, preparation, delta_route) <= tol,
        decomposition_residual=decomposition.residual,
        preparation_residual=preparation,
        scale=scale,
        details={"delta_route": delta_route},
    )
