"""Tripotents, Peirce projections, orthogonality, and the tripotent order.

A tripotent e splits the space into the eigenspaces of x -> {e,e,x} at
eigenvalues 1, 1/2, 0 (the Peirce spaces E_2, E_1, E_0).  The projections
are polynomial in the operators L(e,e) and Q(e):

    P_2 = Q(e)^2,  P_1 = 2 L(e,e) - 2 Q(e)^2,  P_0 = Id - 2 L(e,e) + Q(e)^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    KIND_MATRIX,
    Element,
    TripleSystem,
    coord_norm,
    from_matrix,
    random_element,
    same_system,
    triple_product,
)
from .errors import ClusterAmbiguity, DegenerateSample, NotATripotent, ZeroTripotent
from .operators import (
    RealLinearOperator,
    identity_operator,
    l_operator,
    operator_norm,
    q_operator,
)
from .rng import complex_normal, substream

RANK_TOL = 1e-8  # relative singular-value threshold for rank decisions


@dataclass(frozen=True)
class PeirceDecomposition:
    """x = x0 + x1 + x2 with x_j in the Peirce-j space of e."""

    e: Element
    parts: tuple[Element, Element, Element]

    def part(self, j: int) -> Element:
        return self.parts[j]


def is_tripotent(e: Element, tol: float = DEFAULT_TOL) -> bool:
    """True iff {e,e,e} = e up to ``tol * (1 + |e|^3)``.  Zero counts."""
    cube = triple_product(e, e, e)
    scale = 1.0 + coord_norm(e) ** 3
    return coord_norm(cube - e) <= tol * scale


def _require_tripotent(e: Element, tol: float, what: str = "element") -> None:
    if not is_tripotent(e, tol):
        raise NotATripotent(f"{what} fails the tripotent identity {{e,e,e}} = e")


def peirce_projection(e: Element, j: int, tol: float = DEFAULT_TOL) -> RealLinearOperator:
    """The Peirce projection P_j(e) for j in {0, 1, 2}."""
    if j not in (0, 1, 2):
        raise ValueError("Peirce index must be 0, 1 or 2")
    _require_tripotent(e, tol)
    q = q_operator(e)
    q2 = q @ q
    if j == 2:
        return q2
    ell = l_operator(e, e)
    if j == 1:
        return 2.0 * ell - 2.0 * q2
    return identity_operator(e.system) - 2.0 * ell + q2


def peirce_decompose(e: Element, x: Element, tol: float = DEFAULT_TOL) -> PeirceDecomposition:
    same_system(e, x)
    _require_tripotent(e, tol)
    parts = tuple(peirce_projection(e, j, tol).apply(x) for j in (0, 1, 2))
    return PeirceDecomposition(e=e, parts=parts)


def are_orthogonal(a: Element, b: Element, tol: float = DEFAULT_TOL) -> bool:
    """True iff the operator x -> {a, b, x} vanishes (relative to |a||b|+1)."""
    same_system(a, b)
    scale = 1.0 + coord_norm(a) * coord_norm(b)
    orthogonal = operator_norm(l_operator(a, b)) <= tol * scale
    if orthogonal:
        # the orthogonality relation is two-sided and kills {a,a,b}
        slack = 100.0 * tol * scale
        assert coord_norm(triple_product(a, a, b)) <= slack
        assert operator_norm(l_operator(b, a)) <= slack
    return orthogonal


def tripotent_leq(u: Element, e: Element, tol: float = DEFAULT_TOL) -> bool:
    """u <= e iff e - u is a tripotent orthogonal to u (u = e included)."""
    same_system(u, e)
    _require_tripotent(u, tol, "first argument")
    _require_tripotent(e, tol, "second argument")
    diff = e - u
    return is_tripotent(diff, tol) and are_orthogonal(diff, u, tol)


def is_minimal(e: Element, tol: float = DEFAULT_TOL, rank_tol: float = RANK_TOL) -> bool:
    """True iff the Peirce-2 space of e is the complex line through e."""
    _require_tripotent(e, tol)
    if coord_norm(e) <= tol:
        raise ZeroTripotent("minimality is undefined for the zero tripotent")
    p2 = peirce_projection(e, 2, tol)
    sv = np.linalg.svd(p2.matrix, compute_uv=False)
    rank = int(np.sum(sv > rank_tol * sv[0]))
    return rank == 2  # one complex dimension, realified


def random_tripotent(system: TripleSystem, seed: int) -> Element:
    """A nonzero tripotent drawn deterministically from ``seed``.

    Matrix systems take the partial isometry of a random Gaussian matrix
    truncated at a random rank; custom systems take the range tripotent
    of a random element, retrying on degenerate draws.
    """
    if system.kind == KIND_MATRIX:
        rng = substream(seed)
        rows, cols = system.shape
        rank = int(rng.integers(1, min(rows, cols) + 1))
        g = complex_normal(rng, (rows, cols))
        u, _, vh = np.linalg.svd(g)
        return from_matrix(system, u[:, :rank] @ vh[:rank, :])

    from .spectral import range_tripotent  # deferred to keep the import graph acyclic

    for attempt in range(8):
        rng = substream(seed, attempt)
        candidate = random_element(system, rng)
        if coord_norm(candidate) < 1e-8:
            continue
        try:
            e = range_tripotent(candidate)
        except ClusterAmbiguity:
            continue
        if coord_norm(e) > 1e-8 and is_tripotent(e, 1e-6):
            return e
    raise DegenerateSample("failed to generate a nonzero tripotent after 8 attempts")
