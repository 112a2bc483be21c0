"""Real-linear operators on realified coordinates.

A complex (or conjugate-linear) operator on C^d is stored as a real
2d x 2d matrix acting on the stacked vector (Re x, Im x).  Multiplication
by i is then the block matrix J = [[0, -I], [I, 0]]; an operator is
complex-linear exactly when it commutes with J, which makes
complex-linearity a block-structure test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Element, TripleSystem, element, same_system
from .errors import NotComplexLinear, SystemMismatch

DEFAULT_TOL = 1e-9


def realify_vector(x: np.ndarray) -> np.ndarray:
    return np.concatenate([x.real, x.imag])


def unrealify_vector(v: np.ndarray) -> np.ndarray:
    d = v.size // 2
    return v[:d] + 1j * v[d:]


def realify_complex_matrix(m: np.ndarray) -> np.ndarray:
    """Real form [[A, -B], [B, A]] of the complex-linear map x -> m x."""
    a, b = m.real, m.imag
    return np.block([[a, -b], [b, a]])


def realify_conjugate_matrix(m: np.ndarray) -> np.ndarray:
    """Real form [[A, B], [B, -A]] of the conjugate-linear map x -> m conj(x)."""
    a, b = m.real, m.imag
    return np.block([[a, b], [b, -a]])


def _j_matrix(dim: int) -> np.ndarray:
    eye = np.eye(dim)
    zero = np.zeros((dim, dim))
    return np.block([[zero, -eye], [eye, zero]])


def _check_system(system: TripleSystem, a: Element) -> None:
    if a.system is not system and a.system != system:
        raise SystemMismatch("element is bound to a different triple system")


@dataclass(frozen=True, eq=False)
class RealLinearOperator:
    """Real 2d x 2d matrix acting on (Re x, Im x) coordinates."""

    matrix: np.ndarray
    system: TripleSystem

    def apply(self, a: Element) -> Element:
        _check_system(self.system, a)
        return element(self.system, unrealify_vector(self.matrix @ realify_vector(a.coords)))

    def __matmul__(self, other: "RealLinearOperator") -> "RealLinearOperator":
        return RealLinearOperator(self.matrix @ other.matrix, self.system)

    def __add__(self, other):
        return RealLinearOperator(self.matrix + other.matrix, self.system)

    def __sub__(self, other):
        return RealLinearOperator(self.matrix - other.matrix, self.system)

    def __mul__(self, scalar):
        return RealLinearOperator(self.matrix * float(scalar), self.system)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class ComplexLinearMap:
    """d x d complex matrix representing a complex-linear map E -> E."""

    entries: np.ndarray
    system: TripleSystem

    def apply(self, a: Element) -> Element:
        _check_system(self.system, a)
        return element(self.system, self.entries @ a.coords)

    def realify(self) -> RealLinearOperator:
        return RealLinearOperator(realify_complex_matrix(self.entries), self.system)

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __matmul__(self, other: "ComplexLinearMap") -> "ComplexLinearMap":
        return ComplexLinearMap(self.entries @ other.entries, self.system)

    def __add__(self, other):
        return ComplexLinearMap(self.entries + other.entries, self.system)

    def __sub__(self, other):
        return ComplexLinearMap(self.entries - other.entries, self.system)

    def __neg__(self):
        return ComplexLinearMap(-self.entries, self.system)

    def __mul__(self, scalar):
        return ComplexLinearMap(self.entries * complex(scalar), self.system)

    __rmul__ = __mul__


def complex_map(system: TripleSystem, entries) -> ComplexLinearMap:
    arr = np.asarray(entries, dtype=complex)
    if arr.shape != (system.dim, system.dim):
        raise ValueError(f"map must be {system.dim} x {system.dim}")
    arr = arr.copy()
    arr.setflags(write=False)
    return ComplexLinearMap(arr, system)


def identity_map(system: TripleSystem) -> ComplexLinearMap:
    return complex_map(system, np.eye(system.dim, dtype=complex))


def identity_operator(system: TripleSystem) -> RealLinearOperator:
    return RealLinearOperator(np.eye(2 * system.dim), system)


def l_operator(a: Element, b: Element) -> RealLinearOperator:
    """Realified matrix of the complex-linear map x -> {a, b, x}."""
    system = same_system(a, b)
    m = np.einsum("ijkl,i,j->lk", system.structure, a.coords, np.conj(b.coords))
    return RealLinearOperator(realify_complex_matrix(m), system)


def l_map(a: Element, b: Element) -> ComplexLinearMap:
    """x -> {a, b, x} as a complex matrix."""
    system = same_system(a, b)
    m = np.einsum("ijkl,i,j->lk", system.structure, a.coords, np.conj(b.coords))
    return ComplexLinearMap(m, system)


def q_operator(a: Element) -> RealLinearOperator:
    """Realified matrix of the conjugate-linear map x -> {a, x, a}."""
    system = a.system
    m = np.einsum("ijkl,i,k->lj", system.structure, a.coords, a.coords)
    return RealLinearOperator(realify_conjugate_matrix(m), system)


def as_complex_linear(op: RealLinearOperator, tol: float = DEFAULT_TOL) -> ComplexLinearMap:
    """Extract the complex matrix of ``op`` if it commutes with i.

    Raises :class:`NotComplexLinear` when the commutator with J exceeds
    ``tol`` relative to the operator size.
    """
    d = op.system.dim
    j = _j_matrix(d)
    commutator = op.matrix @ j - j @ op.matrix
    residual = np.linalg.norm(commutator) / (1.0 + np.linalg.norm(op.matrix))
    if residual > tol:
        raise NotComplexLinear(
            f"operator does not commute with multiplication by i (residual {residual:.3e})"
        )
    a = op.matrix[:d, :d]
    b = op.matrix[d:, :d]
    return ComplexLinearMap(a + 1j * b, op.system)


def spectral_radius(op: RealLinearOperator) -> float:
    """max |lambda| over eigenvalues of the real matrix."""
    if not np.any(op.matrix):
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvals(op.matrix))))


def operator_norm(op: RealLinearOperator) -> float:
    """Operator 2-norm (largest singular value of the real matrix)."""
    if not np.any(op.matrix):
        return 0.0
    return float(np.linalg.svd(op.matrix, compute_uv=False)[0])
