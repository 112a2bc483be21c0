"""Odd-power functional calculus.

Every element decomposes as a = sum of lambda_i e_i with lambda_1 > ... >
lambda_p > 0 and mutually orthogonal tripotents e_i.  Matrix systems read
this off the SVD by grouping singular-value clusters; custom systems
diagonalize x -> {a,a,x} on the subtriple generated by a (the span of the
odd powers a, a^[3], a^[5], ...) and rebuild each e_i by odd-polynomial
interpolation, which avoids any eigenvector phase ambiguity.

Cluster handling is deliberately strict: two spectral values closer than
``gap`` but farther apart than ``roundoff`` raise ClusterAmbiguity, since
range/support tripotents are discontinuous at degeneracies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    KIND_MATRIX,
    Element,
    coord_norm,
    element,
    element_norm,
    from_matrix,
    to_matrix,
    triple_product,
    zero_element,
)
from .errors import ClusterAmbiguity, JTripleError, NotNormOne, ZeroElement

GAP_TOL = 1e-8  # relative gap below which two spectral values need one cluster
ROUNDOFF_TOL = 1e-12  # relative gap treated as an exact tie


@dataclass(frozen=True)
class SpectralDecomposition:
    """Pairs (lambda_i, e_i), lambda strictly decreasing, e_i orthogonal tripotents."""

    pairs: tuple[tuple[float, Element], ...]
    element: Element

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(lam for lam, _ in self.pairs)


def odd_power(a: Element, n: int) -> Element:
    """a^[2n-1] via the recursion a^[2k+1] = {a, a^[2k-1], a}, a^[1] = a."""
    if n < 1:
        raise ValueError("odd-power index must be a positive integer")
    out = a
    for _ in range(n - 1):
        out = triple_product(a, out, a)
    return out


def _cluster(values: np.ndarray, gap: float, roundoff: float) -> list[list[int]]:
    """Group indices of descending positive values; ambiguous gaps raise."""
    scale = values[0]
    groups: list[list[int]] = [[0]]
    for i in range(1, values.size):
        diff = values[i - 1] - values[i]
        if diff <= roundoff * scale:
            groups[-1].append(i)
        elif diff < gap * scale:
            raise ClusterAmbiguity(
                f"spectral values {values[i - 1]:.12g} and {values[i]:.12g} are separated "
                f"by less than the gap threshold; pass an explicit gap to proceed"
            )
        else:
            groups.append([i])
    return groups


def _decompose_matrix(a: Element, gap: float, roundoff: float):
    mat = to_matrix(a)
    u, sv, vh = np.linalg.svd(mat)
    smax = sv[0]
    positive = sv > gap * smax
    ambiguous = (~positive) & (sv > roundoff * smax)
    if np.any(ambiguous):
        raise ClusterAmbiguity(
            "a singular value sits between the roundoff and gap thresholds of zero"
        )
    count = int(np.sum(positive))
    pairs = []
    for group in _cluster(sv[:count], gap, roundoff):
        lam = float(np.mean(sv[group]))
        trip = sum(np.outer(u[:, i], vh[i, :]) for i in group)
        pairs.append((lam, from_matrix(a.system, trip)))
    return pairs


def _decompose_custom(a: Element, gap: float, roundoff: float):
    system = a.system
    top = element_norm(a)
    unit = a * (1.0 / top)

    # orthonormal basis of the subtriple generated by a: Krylov iteration of
    # x -> {unit, x, unit} started at unit, with two-pass Gram-Schmidt
    q_list = [unit.coords / np.linalg.norm(unit.coords)]
    while len(q_list) < system.dim:
        w = triple_product(unit, element(system, q_list[-1]), unit).coords
        for _ in range(2):
            for q in q_list:
                w = w - (q.conj() @ w) * q
        norm_w = np.linalg.norm(w)
        if norm_w <= 1e-10:
            break
        q_list.append(w / norm_w)
    m = len(q_list)

    l_matrix = np.einsum(
        "ijkl,i,j->lk", system.structure, unit.coords, np.conj(unit.coords)
    )
    basis = np.array(q_list).T
    restricted = basis.conj().T @ l_matrix @ basis
    eig = np.sort(np.linalg.eigvals(restricted).real)[::-1]
    lams = np.sqrt(np.clip(eig, 0.0, None))

    groups = _cluster(lams, gap, roundoff)
    if len(groups) != m:
        # a repeated spectral value contradicts the stabilized span dimension
        raise ClusterAmbiguity("spectral values repeat inside the generated subtriple")
    distinct = np.array([float(np.mean(lams[g])) for g in groups])

    # odd-polynomial interpolation: e_r = f_r(unit) with f_r(lambda_s) = delta_rs,
    # f_r odd of degree 2m-1, evaluated through the odd powers of unit
    powers = [odd_power(unit, k + 1).coords for k in range(m)]
    vander = np.array([[lam ** (2 * k + 1) for k in range(m)] for lam in distinct])
    coeff = np.linalg.solve(vander, np.eye(m))
    pairs = []
    for r in range(m):
        coords = sum(coeff[k, r] * powers[k] for k in range(m))
        pairs.append((float(distinct[r]) * top, element(system, coords)))
    return pairs


def spectral_tripotent_decomposition(
    a: Element,
    tol: float = DEFAULT_TOL,
    gap: float = GAP_TOL,
    roundoff: float = ROUNDOFF_TOL,
) -> SpectralDecomposition:
    """Write a as a linear combination of mutually orthogonal tripotents.

    The zero element yields an empty pair list.
    """
    if not np.any(a.coords):
        return SpectralDecomposition(pairs=(), element=a)
    if a.system.kind == KIND_MATRIX:
        pairs = _decompose_matrix(a, gap, roundoff)
    else:
        pairs = _decompose_custom(a, gap, roundoff)

    recon = np.zeros(a.system.dim, dtype=complex)
    for lam, trip in pairs:
        recon = recon + lam * trip.coords
    defect = np.linalg.norm(recon - a.coords) / (1.0 + coord_norm(a))
    if defect > max(tol, 1e3 * np.finfo(float).eps) * 10:
        raise JTripleError(f"spectral decomposition failed to reconstruct (defect {defect:.3e})")
    return SpectralDecomposition(pairs=tuple(pairs), element=a)


def range_tripotent(a: Element, gap: float = GAP_TOL) -> Element:
    """Smallest tripotent whose Peirce-2 space holds a as a positive element.

    Equals the limit of the odd roots; r(0) = 0 by convention.
    """
    if not np.any(a.coords):
        return zero_element(a.system)
    decomposition = spectral_tripotent_decomposition(a, gap=gap)
    out = zero_element(a.system)
    for _, trip in decomposition.pairs:
        out = out + trip
    return out


def support_tripotent(a: Element, tol: float = DEFAULT_TOL, gap: float = GAP_TOL) -> Element:
    """Limit of the odd powers of a norm-one element: its lambda = 1 part."""
    norm = element_norm(a)
    if abs(norm - 1.0) > tol:
        raise NotNormOne(f"support tripotent needs |a| = 1, got {norm:.12g}")
    decomposition = spectral_tripotent_decomposition(a, tol=tol, gap=gap)
    out = zero_element(a.system)
    for lam, trip in decomposition.pairs:
        if abs(lam - 1.0) <= gap:
            out = out + trip
    return out


def odd_root(a: Element, n: int, tol: float = DEFAULT_TOL, gap: float = GAP_TOL) -> Element:
    """The unique a^[1/(2n-1)] in the subtriple generated by a."""
    if n < 1:
        raise ValueError("odd-root index must be a positive integer")
    if not np.any(a.coords):
        raise ZeroElement("odd roots of the zero element are not defined")
    decomposition = spectral_tripotent_decomposition(a, tol=tol, gap=gap)
    out = zero_element(a.system)
    exponent = 1.0 / (2 * n - 1)
    for lam, trip in decomposition.pairs:
        out = out + (lam ** exponent) * trip
    return out
