"""
Jordan Algebra Module
=====================
Euclidean (formally real) Jordan algebras and the operations the rest of the
package is built on:
- RealSym(n), ComplexHerm(n), QuatHerm(n) with a∘b = (ab + ba)/2
  (quaternionic matrices live inside their 2n x 2n complex embedding)
- SpinFactor(d) with (s, x)∘(t, y) = (st + x·y, sy + tx)
- direct sums of the above
- trace form normalized so every primitive idempotent has unit length
- spectral decomposition, functional calculus, quadratic representation
- cone membership with a separating witness
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import block_diag

from config import DEFAULT_TOL

SQRT_HALF = 1.0 / math.sqrt(2.0)

KIND_LABELS = {
    "real": "RealSym",
    "complex": "ComplexHerm",
    "quaternion": "QuatHerm",
    "spin": "SpinFactor",
    "direct_sum": "DirectSum",
}

# Accepted spellings for descriptor / CLI kind strings
KIND_ALIASES = {
    "real": "real", "realsym": "real", "rebit": "real", "r": "real",
    "complex": "complex", "complexherm": "complex", "qubit": "complex", "c": "complex",
    "quaternion": "quaternion", "quaternionic": "quaternion", "quatherm": "quaternion",
    "quabit": "quaternion", "h": "quaternion",
    "spin": "spin", "spinfactor": "spin",
}

# Real units of the quaternions (1, i, j, k) used per off-diagonal slot
_UNITS_PER_KIND = {"real": 1, "complex": 2, "quaternion": 4}


class JordanAlgebraError(ValueError):
    """Base error for Jordan algebra construction and arithmetic."""


class UnsupportedKindError(JordanAlgebraError):
    pass


class AlgebraMismatchError(JordanAlgebraError):
    pass


class DomainError(JordanAlgebraError):
    """A function was applied outside its domain on some eigenvalue."""

    def __init__(self, message: str, eigenvalue: float):
        super().__init__(f"{message} (eigenvalue {eigenvalue:.6g})")
        self.eigenvalue = eigenvalue


def normalize_kind(kind: str) -> str:
    key = kind.strip().lower().replace("_", "").replace("-", "").replace(" ", "")
    if key not in KIND_ALIASES:
        raise UnsupportedKindError(f"Unsupported algebra kind: {kind!r}")
    return KIND_ALIASES[key]


def quaternion_embedding(entries: np.ndarray) -> np.ndarray:
    """
    Map an n x n quaternion matrix to its 2n x 2n complex embedding.

    `entries` has shape (n, n, 4) holding (a, b, c, d) for a + bi + cj + dk.
    Writing q = z + w j with z = a + bi, w = c + di, the block form is
    [[Z, W], [-conj(W), conj(Z)]], which is multiplicative.
    """
    z = entries[..., 0] + 1j * entries[..., 1]
    w = entries[..., 2] + 1j * entries[..., 3]
    return np.block([[z, w], [-w.conj(), z.conj()]])


def _realize(kind: str, entries: np.ndarray) -> np.ndarray:
    if kind == "real":
        return entries[..., 0].astype(float)
    if kind == "complex":
        return entries[..., 0] + 1j * entries[..., 1]
    return quaternion_embedding(entries)


def _matrix_basis(kind: str, n: int) -> np.ndarray:
    """Trace-orthonormal basis of the Hermitian n x n matrices over R, C or H."""
    units = _UNITS_PER_KIND[kind]
    basis = []
    for i in range(n):
        entries = np.zeros((n, n, 4))
        entries[i, i, 0] = 1.0
        basis.append(_realize(kind, entries))
    for i in range(n):
        for j in range(i + 1, n):
            for unit in range(units):
                entries = np.zeros((n, n, 4))
                entries[i, j, unit] = SQRT_HALF
                # Hermitian: the mirrored entry is the quaternion conjugate
                entries[j, i, unit] = SQRT_HALF if unit == 0 else -SQRT_HALF
                basis.append(_realize(kind, entries))
    return np.stack(basis)


def _theta(vector: np.ndarray) -> np.ndarray:
    """Antiunitary (x; y) -> (-conj(y); conj(x)) commuting with quaternionic embeddings."""
    half = vector.shape[0] // 2
    return np.concatenate([-vector[half:].conj(), vector[:half].conj()])


def _cluster_descending(values: Sequence[float], tol: float) -> List[List[int]]:
    """Group indices of descending values whose distance to the block head is within tol."""
    blocks: List[List[int]] = []
    head = None
    for index, value in enumerate(values):
        if head is None or head - value > tol:
            blocks.append([index])
            head = value
        else:
            blocks[-1].append(index)
    return blocks


class Algebra:
    """A Euclidean Jordan algebra realized on real coordinates of length `dim`."""

    def __init__(self, kind: str, size: int, components: Sequence["Algebra"] = ()):
        self.kind = kind
        self.size = size
        self.components: Tuple[Algebra, ...] = tuple(components)
        self._basis: Optional[np.ndarray] = None
        self._trace_scale = 1.0

        if kind == "direct_sum":
            self.dim = sum(c.dim for c in self.components)
            self.rank = sum(c.rank for c in self.components)
            self.offsets = np.cumsum([0] + [c.dim for c in self.components])
            gram = block_diag(*[c.gram for c in self.components])
            conjugation = block_diag(*[c.conjugation for c in self.components])
            unit = np.concatenate([c.unit_coords for c in self.components])
        elif kind == "spin":
            self.dim = size + 1
            self.rank = 2
            # tr(s, x) = 2s, so <(s,x),(t,y)> = 2(st + x·y)
            gram = 2.0 * np.eye(self.dim)
            conjugation = np.eye(self.dim)
            unit = np.zeros(self.dim)
            unit[0] = 1.0
        else:
            self._basis = _matrix_basis(kind, size)
            self._trace_scale = 0.5 if kind == "quaternion" else 1.0
            self.dim = self._basis.shape[0]
            self.rank = size
            gram = np.eye(self.dim)
            flat = self._basis.reshape(self.dim, -1).conj()
            # entrywise conjugation of the (embedded) matrix, in coordinates
            conjugation = self._trace_scale * np.real(flat @ flat.T)
            unit = self.from_matrix(np.eye(self._basis.shape[1]))

        self.gram = _frozen(gram)
        self.gram_inverse = _frozen(np.linalg.inv(gram))
        self.conjugation = _frozen(conjugation)
        self.unit_coords = _frozen(unit)

    # --- identity -------------------------------------------------------
    @property
    def key(self) -> Tuple:
        if self.kind == "direct_sum":
            return ("direct_sum", tuple(c.key for c in self.components))
        return (self.kind, self.size)

    def __eq__(self, other) -> bool:
        return isinstance(other, Algebra) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def label(self) -> str:
        if self.kind == "direct_sum":
            return " ⊕ ".join(c.label for c in self.components)
        return f"{KIND_LABELS[self.kind]}({self.size})"

    def __repr__(self) -> str:
        return f"Algebra({self.label}, dim={self.dim}, rank={self.rank})"

    def descriptor(self) -> Dict:
        if self.kind == "direct_sum":
            return {"kind": "direct_sum", "components": [c.descriptor() for c in self.components]}
        return {"kind": self.kind, "size": self.size}

    @property
    def is_matrix_kind(self) -> bool:
        return self._basis is not None

    # --- matrix realization ---------------------------------------------
    def to_matrix(self, coords: np.ndarray) -> np.ndarray:
        if not self.is_matrix_kind:
            raise JordanAlgebraError(f"{self.label} has no matrix realization")
        return np.tensordot(coords, self._basis, axes=1)

    def from_matrix(self, matrix: np.ndarray) -> np.ndarray:
        if not self.is_matrix_kind:
            raise JordanAlgebraError(f"{self.label} has no matrix realization")
        flat = self._basis.reshape(self.dim, -1).conj()
        return self._trace_scale * np.real(flat @ np.asarray(matrix).reshape(-1))

    # --- arithmetic on raw coordinates ------------------------------------
    def product(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.kind == "direct_sum":
            parts = []
            for comp, lo, hi in self._slices():
                parts.append(comp.product(a[lo:hi], b[lo:hi]))
            return np.concatenate(parts)
        if self.kind == "spin":
            s, x = a[0], a[1:]
            t, y = b[0], b[1:]
            return np.concatenate(([s * t + x @ y], s * y + t * x))
        A = self.to_matrix(a)
        B = self.to_matrix(b)
        return self.from_matrix(0.5 * (A @ B + B @ A))

    def multiplication_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix of L_a : b -> a∘b acting on coordinates."""
        if self.kind == "direct_sum":
            return block_diag(*[comp.multiplication_matrix(a[lo:hi])
                                for comp, lo, hi in self._slices()])
        if self.kind == "spin":
            s, x = a[0], a[1:]
            L = s * np.eye(self.dim)
            L[0, 1:] = x
            L[1:, 0] = x
            return L
        A = self.to_matrix(a)
        products = 0.5 * (A @ self._basis + self._basis @ A)
        flat = self._basis.reshape(self.dim, -1).conj()
        return self._trace_scale * np.real(flat @ products.reshape(self.dim, -1).T)

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(a @ self.gram @ b)

    def _slices(self):
        for index, comp in enumerate(self.components):
            yield comp, int(self.offsets[index]), int(self.offsets[index + 1])

    # --- spectral data on raw coordinates ----------------------------------
    def eigensystem(self, a: np.ndarray, tol: float) -> Tuple[List[float], List[np.ndarray]]:
        """Eigenvalues (descending) with matching primitive idempotents."""
        if self.kind == "direct_sum":
            pairs = []
            for comp, lo, hi in self._slices():
                values, frame = comp.eigensystem(a[lo:hi], tol)
                for value, p in zip(values, frame):
                    padded = np.zeros(self.dim)
                    padded[lo:hi] = p
                    pairs.append((value, padded))
            pairs.sort(key=lambda pair: -pair[0])
            return [v for v, _ in pairs], [p for _, p in pairs]
        if self.kind == "spin":
            return self._spin_eigensystem(a)
        if self.kind == "quaternion":
            return self._quaternion_eigensystem(a, tol)

        values, vectors = np.linalg.eigh(self.to_matrix(a))
        order = np.argsort(values)[::-1]
        frame = [self.from_matrix(np.outer(vectors[:, i], vectors[:, i].conj())) for i in order]
        return [float(values[i]) for i in order], frame

    def _spin_eigensystem(self, a: np.ndarray) -> Tuple[List[float], List[np.ndarray]]:
        s, x = a[0], a[1:]
        radius = float(np.linalg.norm(x))
        if radius < 1e-14:
            direction = np.zeros(self.size)
            direction[0] = 1.0
        else:
            direction = x / radius
        plus = 0.5 * np.concatenate(([1.0], direction))
        minus = 0.5 * np.concatenate(([1.0], -direction))
        return [float(s + radius), float(s - radius)], [plus, minus]

    def _quaternion_eigensystem(self, a: np.ndarray, tol: float) -> Tuple[List[float], List[np.ndarray]]:
        M = self.to_matrix(a)
        values, vectors = np.linalg.eigh(M)
        order = np.argsort(values)[::-1]
        values, vectors = values[order], vectors[:, order]
        # Kramers pairs: the embedded spectrum is each eigenvalue twice
        paired = 0.5 * (values[0::2] + values[1::2])

        eigenvalues: List[float] = []
        frame: List[np.ndarray] = []
        for block in _cluster_descending(paired, tol):
            columns = [column for index in block for column in (2 * index, 2 * index + 1)]
            V = vectors[:, columns]
            remaining = V @ V.conj().T
            for _ in block:
                column = int(np.argmax(np.linalg.norm(remaining, axis=0)))
                v = remaining[:, column]
                v = v / np.linalg.norm(v)
                partner = _theta(v)
                P = np.outer(v, v.conj()) + np.outer(partner, partner.conj())
                eigenvalues.append(float(np.real(v.conj() @ M @ v)))
                frame.append(self.from_matrix(P))
                remaining = remaining - P
        return eigenvalues, frame


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


# Global cache of constructed algebras (bases are built once per kind and size)
_algebra_cache: Dict[Tuple, Algebra] = {}


def make_algebra(kind: str, size: int) -> Algebra:
    """Build (or fetch) RealSym(n), ComplexHerm(n), QuatHerm(n) or SpinFactor(d)."""
    kind = normalize_kind(kind)
    if not isinstance(size, (int, np.integer)) or isinstance(size, bool):
        raise JordanAlgebraError(f"size must be an integer, got {size!r}")
    size = int(size)
    if kind == "spin" and size < 2:
        raise JordanAlgebraError(f"SpinFactor needs d >= 2, got {size}")
    if size < 1:
        raise JordanAlgebraError(f"{KIND_LABELS[kind]} needs size >= 1, got {size}")
    key = (kind, size)
    if key not in _algebra_cache:
        _algebra_cache[key] = Algebra(kind, size)
    return _algebra_cache[key]


def direct_sum(*algebras: Algebra) -> Algebra:
    if len(algebras) < 2:
        raise JordanAlgebraError("a direct sum needs at least two summands")
    key = ("direct_sum", tuple(a.key for a in algebras))
    if key not in _algebra_cache:
        _algebra_cache[key] = Algebra("direct_sum", len(algebras), algebras)
    return _algebra_cache[key]


def algebra_from_descriptor(descriptor: Dict) -> Algebra:
    kind = descriptor.get("kind")
    if kind is None:
        raise JordanAlgebraError("algebra descriptor is missing 'kind'")
    if str(kind).lower().replace("_", "") == "directsum":
        components = descriptor.get("components") or []
        return direct_sum(*[algebra_from_descriptor(c) for c in components])
    if "size" not in descriptor:
        raise JordanAlgebraError("algebra descriptor is missing 'size'")
    return make_algebra(kind, descriptor["size"])


# --- Domain types ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Element:
    """A vector of the algebra; doubles as an element of the effect space E(A)."""
    algebra: Algebra
    coords: np.ndarray

    def __post_init__(self):
        coords = np.array(self.coords, dtype=float).reshape(-1)
        if coords.shape[0] != self.algebra.dim:
            raise JordanAlgebraError(
                f"{self.algebra.label} expects {self.algebra.dim} coordinates, got {coords.shape[0]}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def _same(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.algebra != self.algebra:
            raise AlgebraMismatchError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, self.coords - other.coords)

    def __neg__(self) -> "Element":
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar: float) -> "Element":
        return Element(self.algebra, float(scalar) * self.coords)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "Element":
        return Element(self.algebra, self.coords / float(scalar))

    def matrix(self) -> np.ndarray:
        return self.algebra.to_matrix(self.coords)

    def __repr__(self) -> str:
        return f"Element({self.algebra.label}, {np.round(self.coords, 6).tolist()})"


@dataclass(frozen=True, eq=False)
class SpectralData:
    element: Element
    frame: Tuple[Element, ...]
    eigenvalues: np.ndarray

    def reconstruct(self) -> Element:
        total = np.zeros(self.element.algebra.dim)
        for value, p in zip(self.eigenvalues, self.frame):
            total = total + value * p.coords
        return Element(self.element.algebra, total)

    def residuals(self) -> Dict[str, float]:
        return {
            **frame_residuals(self.frame),
            "reconstruction": norm(self.reconstruct() - self.element),
        }

    def is_valid(self, tol: float = DEFAULT_TOL) -> bool:
        return all(value <= tol * (1.0 + norm(self.element)) for value in self.residuals().values())


@dataclass(frozen=True, eq=False)
class LinearMap:
    """A linear map between algebras, given by its matrix on coordinates."""
    domain: Algebra
    codomain: Algebra
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.shape != (self.codomain.dim, self.domain.dim):
            raise JordanAlgebraError(
                f"map matrix has shape {matrix.shape}, expected {(self.codomain.dim, self.domain.dim)}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinearMap":
        return cls(algebra, algebra, np.eye(algebra.dim))

    def __call__(self, a: Element) -> Element:
        if a.algebra != self.domain:
            raise AlgebraMismatchError(f"map expects {self.domain.label}, got {a.algebra.label}")
        return Element(self.codomain, self.matrix @ a.coords)

    def compose(self, first: "LinearMap") -> "LinearMap":
        """self ∘ first."""
        if first.codomain != self.domain:
            raise AlgebraMismatchError("maps are not composable")
        return LinearMap(first.domain, self.codomain, self.matrix @ first.matrix)

    def scaled(self, factor: float) -> "LinearMap":
        return LinearMap(self.domain, self.codomain, factor * self.matrix)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.codomain, self.domain, np.linalg.inv(self.matrix))

    def trace_adjoint(self) -> "LinearMap":
        """Adjoint with respect to the trace forms of domain and codomain."""
        matrix = self.domain.gram_inverse @ self.matrix.T @ self.codomain.gram
        return LinearMap(self.codomain, self.domain, matrix)

    def distance(self, other: "LinearMap") -> float:
        return float(np.max(np.abs(self.matrix - other.matrix)))


@dataclass(frozen=True, eq=False)
class ConeMembership:
    status: str
    min_eigenvalue: float
    witness: Optional[Element] = None


INSIDE = "inside_interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


# --- Operations -----------------------------------------------------------

def element(algebra: Algebra, coords) -> Element:
    return Element(algebra, coords)


def element_from_matrix(algebra: Algebra, matrix: np.ndarray) -> Element:
    return Element(algebra, algebra.from_matrix(matrix))


def unit(algebra: Algebra) -> Element:
    return Element(algebra, algebra.unit_coords)


def _check_pair(a: Element, b: Element) -> None:
    if a.algebra != b.algebra:
        raise AlgebraMismatchError(f"{a.algebra.label} vs {b.algebra.label}")


def jordan_product(a: Element, b: Element) -> Element:
    _check_pair(a, b)
    return Element(a.algebra, a.algebra.product(a.coords, b.coords))


def trace_inner_product(a: Element, b: Element) -> float:
    _check_pair(a, b)
    return a.algebra.inner(a.coords, b.coords)


def norm(a: Element) -> float:
    return math.sqrt(max(trace_inner_product(a, a), 0.0))


def spectral_decompose(a: Element, tol: float = DEFAULT_TOL) -> SpectralData:
    values, frame = a.algebra.eigensystem(a.coords, tol)
    return SpectralData(
        element=a,
        frame=tuple(Element(a.algebra, p) for p in frame),
        eigenvalues=np.array(values, dtype=float),
    )


def functional_calculus(a: Element, f: Callable[[float], float],
                        tol: float = DEFAULT_TOL) -> Element:
    """f(a) = Σ f(λ_i) p_i over the spectral decomposition of a."""
    spectral = spectral_decompose(a, tol)
    total = np.zeros(a.algebra.dim)
    for value, p in zip(spectral.eigenvalues, spectral.frame):
        image = f(float(value))
        if not np.isfinite(image):
            raise DomainError("function is undefined on the spectrum", float(value))
        total = total + image * p.coords
    return Element(a.algebra, total)


def square(a: Element, tol: float = DEFAULT_TOL) -> Element:
    return functional_calculus(a, lambda t: t * t, tol)


def sqrt(a: Element, tol: float = DEFAULT_TOL) -> Element:
    def _root(t: float) -> float:
        if t < -tol:
            raise DomainError("square root of an element outside the cone", t)
        return math.sqrt(max(t, 0.0))
    return functional_calculus(a, _root, tol)


def inverse(a: Element, tol: float = DEFAULT_TOL) -> Element:
    def _reciprocal(t: float) -> float:
        if abs(t) <= tol:
            raise DomainError("inverse of a singular element", t)
        return 1.0 / t
    return functional_calculus(a, _reciprocal, tol)


def multiplication_operator(a: Element) -> LinearMap:
    return LinearMap(a.algebra, a.algebra, a.algebra.multiplication_matrix(a.coords))


def quadratic_rep(c: Element) -> LinearMap:
    """U_c = 2 L_c² - L_{c²}; for matrix kinds U_c(a) = c a c."""
    L = c.algebra.multiplication_matrix(c.coords)
    L_square = c.algebra.multiplication_matrix(c.algebra.product(c.coords, c.coords))
    return LinearMap(c.algebra, c.algebra, 2.0 * L @ L - L_square)


def cone_membership(a: Element, tol: float = DEFAULT_TOL) -> ConeMembership:
    spectral = spectral_decompose(a, tol)
    lowest = float(spectral.eigenvalues.min())
    if lowest > tol:
        return ConeMembership(INSIDE, lowest)
    if lowest >= -tol:
        return ConeMembership(BOUNDARY, lowest)
    # projection onto the negative eigenspaces; <a, witness> = sum of negative eigenvalues
    witness = np.zeros(a.algebra.dim)
    for value, p in zip(spectral.eigenvalues, spectral.frame):
        if value < -tol:
            witness = witness + p.coords
    return ConeMembership(OUTSIDE, lowest, Element(a.algebra, witness))


def jordan_identity_residual(a: Element, b: Element) -> float:
    _check_pair(a, b)
    a2 = jordan_product(a, a)
    lhs = jordan_product(a2, jordan_product(a, b))
    rhs = jordan_product(a, jordan_product(a2, b))
    return norm(lhs - rhs) / (1.0 + norm(a) ** 3 * norm(b))


def frame_residuals(frame: Sequence[Element]) -> Dict[str, float]:
    """Idempotence, pairwise orthogonality and completeness of a candidate Jordan frame."""
    if not frame:
        return {"idempotent": math.inf, "orthogonal": math.inf, "completeness": math.inf}
    algebra = frame[0].algebra
    idempotent = max(norm(jordan_product(p, p) - p) for p in frame)
    orthogonal = 0.0
    for i, p in enumerate(frame):
        for q in frame[i + 1:]:
            orthogonal = max(orthogonal, norm(jordan_product(p, q)))
    total = Element(algebra, np.sum([p.coords for p in frame], axis=0))
    return {
        "idempotent": idempotent,
        "orthogonal": orthogonal,
        "completeness": norm(total - unit(algebra)),
    }


def formal_reality_margin(algebra: Algebra) -> float:
    """
    Smallest eigenvalue of the form (a, b) -> Tr(L_{a∘b}) on the coordinate basis.

    Built from the product alone, so positivity certifies formal reality
    independently of the stored trace-form normalization.
    """
    basis = np.eye(algebra.dim)
    form = np.empty((algebra.dim, algebra.dim))
    for i in range(algebra.dim):
        for j in range(i, algebra.dim):
            product = algebra.product(basis[i], basis[j])
            form[i, j] = form[j, i] = np.trace(algebra.multiplication_matrix(product))
    return float(np.linalg.eigvalsh(form).min())


# --- Sampling -------------------------------------------------------------

def random_element(algebra: Algebra, rng: np.random.Generator, scale: float = 1.0) -> Element:
    return Element(algebra, scale * rng.standard_normal(algebra.dim))


def random_frame(algebra: Algebra, rng: np.random.Generator) -> Tuple[Element, ...]:
    """
    Frame of a random element: Gaussian coordinates are invariant under the
    automorphism group, so this is the standard frame moved by a Haar-random
    orthogonal / unitary / symplectic conjugation.
    """
    return spectral_decompose(random_element(algebra, rng)).frame


def combine(frame: Sequence[Element], weights: Sequence[float]) -> Element:
    algebra = frame[0].algebra
    total = np.zeros(algebra.dim)
    for weight, p in zip(weights, frame):
        total = total + float(weight) * p.coords
    return Element(algebra, total)


def random_interior(algebra: Algebra, rng: np.random.Generator,
                    low: float = 0.1, high: float = 1.0) -> Element:
    frame = random_frame(algebra, rng)
    return combine(frame, rng.uniform(low, high, size=len(frame)))


def random_state(algebra: Algebra, rng: np.random.Generator) -> Element:
    """Cone-interior element with unit trace <a, u> = 1."""
    a = random_interior(algebra, rng)
    return a / trace_inner_product(a, unit(algebra))


def random_outside(algebra: Algebra, rng: np.random.Generator) -> Element:
    """Element with at least one clearly negative eigenvalue."""
    frame = random_frame(algebra, rng)
    values = rng.uniform(-1.0, 1.0, size=len(frame))
    values[int(rng.integers(len(frame)))] = -rng.uniform(0.1, 1.0)
    return combine(frame, values)
