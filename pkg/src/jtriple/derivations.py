"""The real vector space of triple derivations, solved by brute force.

A complex-linear map T is a triple derivation when it satisfies the
Leibniz rule T{x,y,z} = {Tx,y,z} + {x,Ty,z} + {x,y,Tz}.  Because the
middle slot conjugates, the rule is only real-linear in T, so the solver
works over the 2 d^2 real unknowns (Re T, Im T) and returns a real basis
of the null space of the constraint matrix.

Constraint rows cover every basis triple (e_i, e_j, e_k) plus the same
triples with the middle vector multiplied by i, which pins down the
conjugate-linear slot.  Multilinearity then extends the rule to all
triples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Element,
    TripleSystem,
    coord_norm,
    element,
    element_norm,
    random_element,
    same_system,
    triple_product,
)
from .errors import NotATripotent
from .operators import ComplexLinearMap, complex_map, q_operator
from .peirce import is_tripotent, peirce_projection
from .report import CheckReport, make_report, worst_witnesses
from .rng import substream

NULLSPACE_TOL = 1e-8  # relative singular-value cutoff for the solution space


@dataclass(frozen=True)
class DerivationBasis:
    """Real-orthonormal basis of the space of triple derivations."""

    system: TripleSystem
    basis: tuple[ComplexLinearMap, ...]
    dim_real: int


def leibniz_residual(t: ComplexLinearMap, x: Element, y: Element, z: Element) -> Element:
    """T{x,y,z} - {Tx,y,z} - {x,Ty,z} - {x,y,Tz}."""
    same_system(x, y, z)
    return (
        t.apply(triple_product(x, y, z))
        - triple_product(t.apply(x), y, z)
        - triple_product(x, t.apply(y), z)
        - triple_product(x, y, t.apply(z))
    )


def _residual_tensors(system: TripleSystem, m: np.ndarray):
    """Leibniz residual on all basis triples, for both middle-slot families.

    Returns (plain, i_middle): arrays of shape (d, d, d, d) whose
    [i, j, k, :] slice is the residual at (e_i, e_j, e_k) and
    (e_i, i e_j, e_k) respectively.
    """
    c = system.structure
    t0 = np.einsum("ijkm,lm->ijkl", c, m)
    t1 = np.einsum("mi,mjkl->ijkl", m, c)
    t2 = np.einsum("mj,imkl->ijkl", np.conj(m), c)
    t3 = np.einsum("mk,ijml->ijkl", m, c)
    plain = t0 - t1 - t2 - t3
    # every term of the residual is conjugate-linear in the middle slot once
    # T itself is a complex matrix, so the i-middle family is -i times the
    # plain one; the rows stay in the constraint set regardless
    i_middle = -1j * plain
    return plain, i_middle


def is_triple_derivation(t: ComplexLinearMap, tol: float = DEFAULT_TOL) -> CheckReport:
    """Exhaustive Leibniz check over all d^3 basis triples (both families).

    Residuals are coordinate 2-norms scaled by 1 + |T|_F; basis coverage
    suffices by multilinearity once the i-middle family fixes the
    conjugate-linear slot.
    """
    plain, i_middle = _residual_tensors(t.system, t.entries)
    scale = 1.0 + t.frobenius()
    entries = []
    for family, tensor in (("plain", plain), ("i-middle", i_middle)):
        norms = np.linalg.norm(tensor, axis=3) / scale
        flat = int(np.argmax(norms))
        i, j, k = np.unravel_index(flat, norms.shape)
        entries.append(
            {
                "residual": float(norms.max()),
                "family": family,
                "triple": [int(i), int(j), int(k)],
            }
        )
    d = t.system.dim
    return make_report(
        name="derivation",
        trials=2 * d**3,
        seed=0,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, keep=2),
    )


def derivation_basis(system: TripleSystem, nullspace_tol: float = NULLSPACE_TOL) -> DerivationBasis:
    """Solve the Leibniz constraints for a real basis of all derivations.

    Assembles the real constraint matrix column by column (one column per
    real unknown of T), takes its SVD, and keeps the right singular
    vectors below ``nullspace_tol`` relative to the top singular value.
    The basis is orthonormal under the real Frobenius inner product, with
    a sign convention (largest entry positive) for reproducible output.
    Cost grows like dim^6; intended for desk-scale systems.
    """
    d = system.dim
    columns = []
    for p in range(d):
        for q in range(d):
            for value in (1.0, 1j):
                m = np.zeros((d, d), dtype=complex)
                m[p, q] = value
                plain, i_middle = _residual_tensors(system, m)
                stacked = np.concatenate([plain.ravel(), i_middle.ravel()])
                columns.append(np.concatenate([stacked.real, stacked.imag]))
    constraint = np.array(columns).T

    _, sv, vh = np.linalg.svd(constraint, full_matrices=True)
    rank = int(np.sum(sv > nullspace_tol * sv[0])) if sv.size else 0
    null_rows = vh[rank:]

    maps = []
    for row in null_rows:
        if np.abs(row).max() > 0 and row[np.argmax(np.abs(row))] < 0:
            row = -row
        re = row[0::2]
        im = row[1::2]
        maps.append(complex_map(system, (re + 1j * im).reshape(d, d)))
    return DerivationBasis(system=system, basis=tuple(maps), dim_real=len(maps))


def inner_derivation(a: Element, b: Element) -> ComplexLinearMap:
    """The standard derivation x -> {a,b,x} - {b,a,x}."""
    system = same_system(a, b)
    c = system.structure
    m = np.einsum("ijkl,i,j->lk", c, a.coords, np.conj(b.coords)) - np.einsum(
        "ijkl,i,j->lk", c, b.coords, np.conj(a.coords)
    )
    return complex_map(system, m)


def check_cube_identity(t: ComplexLinearMap, a: Element) -> float:
    """Spectral norm of T{a,a,a} - 2{Ta,a,a} - {a,Ta,a} (unnormalized)."""
    ta = t.apply(a)
    residual = (
        t.apply(triple_product(a, a, a))
        - 2.0 * triple_product(ta, a, a)
        - triple_product(a, ta, a)
    )
    return element_norm(residual)


def polarization_check(
    system: TripleSystem, samples: int = 100, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Recover {x,y,z} from cubes alone and compare with the product.

    Uses the cube-polarization identity

        {x,y,z} = (1/16) sum_{k=0..3} sum_{j=1,2} (-1)^j i^k w^[3],
        w = x + i^k y + (-1)^j z,

    whose residual is roundoff-level on any valid system.
    """
    entries = []
    for trial in range(samples):
        rng = substream(seed, trial)
        x, y, z = (random_element(system, rng) for _ in range(3))
        acc = np.zeros(system.dim, dtype=complex)
        for k in range(4):
            for j in (1, 2):
                w = x + (1j**k) * y + float((-1) ** j) * z
                cube = triple_product(w, w, w)
                acc = acc + ((-1) ** j) * (1j**k) * cube.coords
        rhs = element(system, acc / 16.0)
        scale = 1.0 + coord_norm(x) * coord_norm(y) * coord_norm(z)
        residual = coord_norm(rhs - triple_product(x, y, z)) / scale
        entries.append({"trial": trial, "residual": residual})
    return make_report(
        name="polarization",
        trials=samples,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries),
    )


def derivation_at_tripotent_identities(
    t: ComplexLinearMap, e: Element, tol: float = DEFAULT_TOL
) -> CheckReport:
    """The three identities a derivation satisfies at a tripotent e.

    (a) P_0(e) T(e) = 0,
    (b) P_2(e) T(e) = -Q(e) T(e),
    (c) T(e) = 2 {T(e), e, e} + {e, T(e), e}.
    """
    if not is_tripotent(e, tol):
        raise NotATripotent("identities are only defined at a tripotent")

    te = t.apply(e)
    q = q_operator(e)
    scale = 1.0 + t.frobenius() * max(element_norm(e), 1.0)
    checks = {
        "p0_annihilation": element_norm(peirce_projection(e, 0, tol).apply(te)) / scale,
        "q_compatibility": element_norm(
            peirce_projection(e, 2, tol).apply(te) + q.apply(te)
        )
        / scale,
        "cube_reproduction": element_norm(
            te - 2.0 * triple_product(te, e, e) - triple_product(e, te, e)
        )
        / scale,
    }
    return make_report(
        name="tripotent-identities",
        trials=3,
        seed=0,
        tol=tol,
        residuals=checks.values(),
        checks=checks,
    )
