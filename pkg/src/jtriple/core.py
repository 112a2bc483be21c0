"""Triple systems, elements, and the triple product.

A ``TripleSystem`` is a finite-dimensional complex space carrying a dense
structure tensor ``c[i, j, k, l]``: the l-th coordinate of the product of
basis elements ``{e_i, e_j, e_k}``.  The product is linear and symmetric
in the outer slots and conjugate-linear in the middle slot.

Matrix systems ``M(m, n)`` use the matrix units in row-major order as the
basis and the product ``{x, y, z} = (x y* z + z y* x) / 2``; the row
triple ``M(1, n)`` doubles as the n-dimensional Hilbert-space triple
``{x, y, z} = (<x,y> z + <z,y> x) / 2``.

Residuals inside :func:`validate_axioms` are measured in the coordinate
2-norm and normalized by the product of the inputs' coordinate norms plus
one, so the tolerance is relative; the validator deliberately avoids the
spectral element norm, whose validity is exactly what is being checked.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSystem, SystemMismatch, UnsupportedSystem
from .report import CheckReport, make_report, worst_witnesses
from .rng import complex_normal, substream

DEFAULT_TOL = 1e-9

KIND_MATRIX = "matrix"
KIND_CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class TripleSystem:
    """A complex triple system of dimension ``dim`` with a dense structure tensor."""

    dim: int
    kind: str
    structure: np.ndarray  # (dim, dim, dim, dim) complex, read-only
    shape: tuple[int, int] | None = None  # (rows, cols) for matrix kind

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, TripleSystem):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.kind == other.kind
            and self.shape == other.shape
            and np.array_equal(self.structure, other.structure)
        )

    def __hash__(self):
        return object.__hash__(self)

    def __repr__(self):
        if self.kind == KIND_MATRIX:
            return f"TripleSystem(matrix {self.shape[0]}x{self.shape[1]})"
        return f"TripleSystem(custom dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Element:
    """Coordinate vector bound to a triple system."""

    coords: np.ndarray  # (dim,) complex, read-only
    system: TripleSystem

    def __add__(self, other):
        same_system(self, other)
        return element(self.system, self.coords + other.coords)

    def __sub__(self, other):
        same_system(self, other)
        return element(self.system, self.coords - other.coords)

    def __neg__(self):
        return element(self.system, -self.coords)

    def __mul__(self, scalar):
        return element(self.system, self.coords * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Element({np.array2string(self.coords, precision=4, suppress_small=True)})"


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def element(system: TripleSystem, coords) -> Element:
    """Bind a coordinate vector to ``system`` (validates the length)."""
    arr = np.asarray(coords, dtype=complex).reshape(-1)
    if arr.shape != (system.dim,):
        raise InvalidSystem(
            f"coordinate vector has length {arr.size}, system dimension is {system.dim}"
        )
    return Element(_freeze(arr.copy()), system)


def zero_element(system: TripleSystem) -> Element:
    return element(system, np.zeros(system.dim, dtype=complex))


def basis_element(system: TripleSystem, i: int) -> Element:
    coords = np.zeros(system.dim, dtype=complex)
    coords[i] = 1.0
    return element(system, coords)


def same_system(*elements_) -> TripleSystem:
    """Assert all operands share a system; returns it."""
    system = elements_[0].system
    for other in elements_[1:]:
        if other.system is not system and other.system != system:
            raise SystemMismatch("operands are bound to different triple systems")
    return system


def _matrix_units(rows: int, cols: int) -> np.ndarray:
    d = rows * cols
    basis = np.zeros((d, rows, cols), dtype=complex)
    for i in range(d):
        basis[i, i // cols, i % cols] = 1.0
    return basis


def make_matrix_triple(rows: int, cols: int) -> TripleSystem:
    """The triple M(rows, cols) under ``{x,y,z} = (x y* z + z y* x) / 2``."""
    if rows < 1 or cols < 1:
        raise InvalidSystem("matrix triple needs rows >= 1 and cols >= 1")
    basis = _matrix_units(rows, cols)
    # evaluate x y* z on every basis triple, then symmetrize the outer slots
    prod = np.einsum("iab,jcb,kcd->ijkad", basis, basis.conj(), basis)
    tensor = 0.5 * (prod + prod.transpose(2, 1, 0, 3, 4))
    d = rows * cols
    return TripleSystem(
        dim=d,
        kind=KIND_MATRIX,
        structure=_freeze(tensor.reshape(d, d, d, d)),
        shape=(rows, cols),
    )


def make_hilbert_triple(dim: int) -> TripleSystem:
    """Alias for the row triple M(1, dim)."""
    return make_matrix_triple(1, dim)


def make_custom_triple(dim: int, structure) -> TripleSystem:
    """Wrap an arbitrary structure tensor; axioms are checked later by
    :func:`validate_axioms`, not here."""
    if dim < 1:
        raise InvalidSystem("dimension must be positive")
    tensor = np.asarray(structure, dtype=complex)
    if tensor.size != dim**4:
        raise InvalidSystem(
            f"structure tensor has {tensor.size} entries, expected dim^4 = {dim ** 4}"
        )
    tensor = tensor.reshape(dim, dim, dim, dim)
    return TripleSystem(dim=dim, kind=KIND_CUSTOM, structure=_freeze(tensor.copy()))


def to_matrix(a: Element) -> np.ndarray:
    """Coordinates of a matrix-triple element reshaped to (rows, cols)."""
    if a.system.kind != KIND_MATRIX:
        raise UnsupportedSystem("element does not belong to a matrix triple")
    return a.coords.reshape(a.system.shape)


def from_matrix(system: TripleSystem, mat) -> Element:
    if system.kind != KIND_MATRIX:
        raise UnsupportedSystem("system is not a matrix triple")
    mat = np.asarray(mat, dtype=complex)
    if mat.shape != system.shape:
        raise InvalidSystem(f"matrix shape {mat.shape} != system shape {system.shape}")
    return element(system, mat.reshape(-1))


def triple_product(x: Element, y: Element, z: Element) -> Element:
    """The product {x, y, z}, conjugate-linear in the middle slot."""
    system = same_system(x, y, z)
    out = np.einsum(
        "ijkl,i,j,k->l", system.structure, x.coords, np.conj(y.coords), z.coords
    )
    return element(system, out)


def coord_norm(a: Element) -> float:
    """Euclidean norm of the coordinate vector."""
    return float(np.linalg.norm(a.coords))


def _l_matrix(system: TripleSystem, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex matrix of x -> {a, b, x}."""
    return np.einsum("ijkl,i,j->lk", system.structure, a, np.conj(b))


def element_norm(a: Element) -> float:
    """Spectral norm: sqrt of the spectral radius of x -> {a, a, x}.

    For matrix triples this equals the largest singular value, which is
    used directly; custom systems go through the eigenvalues, which is
    meaningful once the system passed :func:`validate_axioms`.
    """
    if not np.any(a.coords):
        return 0.0
    if a.system.kind == KIND_MATRIX:
        return float(np.linalg.svd(to_matrix(a), compute_uv=False)[0])
    eig = np.linalg.eigvals(_l_matrix(a.system, a.coords, a.coords))
    return float(np.sqrt(np.max(np.abs(eig))))


def random_element(system: TripleSystem, rng: np.random.Generator) -> Element:
    """Standard complex Gaussian coordinates."""
    return element(system, complex_normal(rng, system.dim))


def jordan_residual(x: Element, y: Element, a: Element, b: Element, c: Element) -> Element:
    """{x,y,{a,b,c}} - {{x,y,a},b,c} + {a,{y,x,b},c} - {a,b,{x,y,c}}."""
    return (
        triple_product(x, y, triple_product(a, b, c))
        - triple_product(triple_product(x, y, a), b, c)
        + triple_product(a, triple_product(y, x, b), c)
        - triple_product(a, b, triple_product(x, y, c))
    )


def validate_axioms(
    system: TripleSystem,
    samples: int = 100,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Numerical check of the triple-system axioms.

    Verifies (i) outer symmetry of the tensor on all basis triples,
    (ii) the Jordan identity on ``samples`` random 5-tuples, (iii) that
    x -> {a,a,x} has real nonnegative spectrum on random a, and, for
    matrix systems, (iv) sqrt(spectral radius of {a,a,.}) against the
    largest singular value of a.  Failures are recorded in the report,
    never raised.
    """
    tensor = system.structure
    tensor_scale = 1.0 + float(np.abs(tensor).max(initial=0.0))
    sym = float(np.abs(tensor - tensor.transpose(2, 1, 0, 3)).max(initial=0.0))
    checks = {"outer_symmetry": sym / tensor_scale}

    jordan_entries = []
    spectrum_worst = 0.0
    norm_worst = 0.0
    for trial in range(samples):
        rng = substream(seed, trial)
        x, y, a, b, c = (random_element(system, rng) for _ in range(5))
        scale = 1.0 + np.prod([coord_norm(v) for v in (x, y, a, b, c)])
        res = coord_norm(jordan_residual(x, y, a, b, c)) / scale
        jordan_entries.append({"trial": trial, "residual": res})

        eig = np.linalg.eigvals(_l_matrix(system, a.coords, a.coords))
        eig_scale = 1.0 + float(np.abs(eig).max(initial=0.0))
        defect = max(0.0, -float(eig.real.min())) + float(np.abs(eig.imag).max())
        spectrum_worst = max(spectrum_worst, defect / eig_scale)

        if system.kind == KIND_MATRIX:
            sv = float(np.linalg.svd(to_matrix(a), compute_uv=False)[0])
            spec = float(np.sqrt(np.max(np.abs(eig))))
            norm_worst = max(norm_worst, abs(spec - sv) / (1.0 + sv))

    checks["jordan_identity"] = max((w["residual"] for w in jordan_entries), default=0.0)
    checks["l_operator_spectrum"] = spectrum_worst
    if system.kind == KIND_MATRIX:
        checks["norm_consistency"] = norm_worst

    return make_report(
        name="axioms",
        trials=samples,
        seed=seed,
        tol=tol,
        residuals=checks.values(),
        witnesses=worst_witnesses(jordan_entries),
        checks=checks,
    )
