"""Randomized batteries for the four equivalent locality conditions.

For a complex-linear map T on a finite-dimensional system the following
are equivalent: T is a triple derivation; T is a local triple derivation;
T is a weak-local triple derivation; T satisfies the pair (h1)/(h2):

    (h1)  {a, T(b), c} = 0 whenever a and c are orthogonal to b,
    (h2)  P_2(e) T(a) = -Q(e) T(a) for every norm-one a and every
          tripotent e with P_2(e) a = {e, a, e} = e.

The local and weak-local checks are samplers (falsifiers), not exact
deciders; the exact routes are the Leibniz check and the (h1)/(h2) pair.

Sampling notes.  In (h1) the element b is drawn with a random spectral
rank, otherwise its range tripotent would almost surely be maximal and
the trial vacuous.  The weak-local sampler alternates complex Gaussian
covectors with norming functionals built from the top singular pair of
the drawn point: for a Gaussian covector phi the values {phi(delta(a))}
over the derivation space almost always fill the whole complex plane
(the trial verifies nothing), while a norming pair forces
Re phi(delta(a)) = 0 for every derivation and so has teeth.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import (
    DEFAULT_TOL,
    KIND_MATRIX,
    Element,
    TripleSystem,
    element,
    element_norm,
    from_matrix,
    make_matrix_triple,
    random_element,
    to_matrix,
    triple_product,
    zero_element,
)
from .derivations import (
    DerivationBasis,
    derivation_at_tripotent_identities,
    is_triple_derivation,
)
from .errors import NormalElementWarning, UnsupportedSystem
from .operators import (
    ComplexLinearMap,
    complex_map,
    q_operator,
    realify_vector,
    unrealify_vector,
)
from .peirce import peirce_projection, random_tripotent
from .report import CheckReport, make_report, worst_witnesses
from .rng import complex_normal, substream
from .spectral import range_tripotent, spectral_tripotent_decomposition

WITNESS_KEEP = 3


def _coords_pairs(a: Element) -> list:
    return [[float(v.real), float(v.imag)] for v in a.coords]


def _reduced_element(system: TripleSystem, rng: np.random.Generator) -> Element:
    """Random element whose spectral rank is drawn uniformly.

    Needed wherever the range tripotent must leave a nonzero Peirce-0
    space with positive probability.
    """
    if system.kind == KIND_MATRIX:
        rows, cols = system.shape
        rank = int(rng.integers(1, min(rows, cols) + 1))
        g = complex_normal(rng, (rows, cols))
        u, sv, vh = np.linalg.svd(g)
        reduced = (u[:, :rank] * sv[:rank]) @ vh[:rank, :]
        return from_matrix(system, reduced)
    raw = random_element(system, rng)
    decomposition = spectral_tripotent_decomposition(raw)
    total = len(decomposition.pairs)
    if total <= 1:
        return raw
    keep = int(rng.integers(1, total + 1))
    out = zero_element(system)
    for lam, trip in decomposition.pairs[:keep]:
        out = out + lam * trip
    return out


def check_h1(
    t: ComplexLinearMap, trials: int = 200, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Sample {a, T(b), c} with a, c orthogonal to b (drawn via P_0 of r(b))."""
    system = t.system
    entries = []
    for trial in range(trials):
        rng = substream(seed, trial)
        b = _reduced_element(system, rng)
        e = range_tripotent(b)
        p0 = peirce_projection(e, 0)
        a = p0.apply(random_element(system, rng))
        c = p0.apply(random_element(system, rng))
        tb = t.apply(b)
        scale = 1.0 + element_norm(a) * element_norm(tb) * element_norm(c)
        residual = element_norm(triple_product(a, tb, c)) / scale
        entries.append({"trial": trial, "residual": residual, "b": _coords_pairs(b)})
    return make_report(
        name="h1",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
    )


def check_h2(
    t: ComplexLinearMap, trials: int = 200, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Sample P_2(e) T(a) + Q(e) T(a) over norm-one a = e + z, z in the
    closed unit ball of the Peirce-0 space of a random tripotent e."""
    system = t.system
    entries = []
    for trial in range(trials):
        rng = substream(seed, trial)
        e = random_tripotent(system, int(rng.integers(0, 2**32)))
        z = peirce_projection(e, 0).apply(random_element(system, rng))
        zn = element_norm(z)
        if zn > 1e-12:
            z = z * (float(rng.uniform(0.0, 1.0)) / zn)
        a = e + z
        ta = t.apply(a)
        p2ta = peirce_projection(e, 2).apply(ta)
        qta = q_operator(e).apply(ta)
        scale = 1.0 + t.frobenius()
        residual = element_norm(p2ta + qta) / scale
        entries.append({"trial": trial, "residual": residual, "e": _coords_pairs(e)})
    return make_report(
        name="h2",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
    )


def _basis_evaluations(basis: DerivationBasis, a: Element) -> np.ndarray:
    """Realified column per basis derivation, evaluated at a."""
    return np.array([realify_vector(delta.apply(a).coords) for delta in basis.basis]).T


def check_local(
    t: ComplexLinearMap,
    basis: DerivationBasis,
    trials: int = 200,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Distance from T(a) to the real span of {delta_i(a)} at random a."""
    system = t.system
    entries = []
    for trial in range(trials):
        rng = substream(seed, trial)
        a = random_element(system, rng)
        columns = _basis_evaluations(basis, a)
        target = realify_vector(t.apply(a).coords)
        coeff, *_ = np.linalg.lstsq(columns, target, rcond=None)
        gap = element(system, unrealify_vector(target - columns @ coeff))
        scale = 1.0 + t.frobenius() * element_norm(a)
        residual = element_norm(gap) / scale
        entries.append({"trial": trial, "residual": residual, "a": _coords_pairs(a)})
    return make_report(
        name="local",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
    )


def _norming_functional(a: Element) -> np.ndarray | None:
    """Covector x -> u1* x v1 from the top singular pair (matrix kind only)."""
    if a.system.kind != KIND_MATRIX:
        return None
    u, _, vh = np.linalg.svd(to_matrix(a))
    # phi(x) = u1* X v1 = sum_ij conj(u1)_i X_ij (v1)_j as a flat covector
    return np.outer(u[:, 0].conj(), vh[0, :].conj()).reshape(-1)


def check_weak_local(
    t: ComplexLinearMap,
    basis: DerivationBasis,
    trials: int = 200,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Distance of phi(T(a)) from the real span of {phi(delta_i(a))} in C.

    Even trials use complex Gaussian covectors (rejected below norm 1e-6);
    odd trials use the norming functional of a when the system supports
    one.  See the module docstring for why the mix is needed.
    """
    system = t.system
    entries = []
    for trial in range(trials):
        rng = substream(seed, trial)
        a = random_element(system, rng)
        phi = None
        if trial % 2 == 1:
            phi = _norming_functional(a)
        if phi is None:
            phi = complex_normal(rng, system.dim)
            while np.linalg.norm(phi) < 1e-6:
                phi = complex_normal(rng, system.dim)
        values = [phi @ delta.apply(a).coords for delta in basis.basis]
        span = np.array([[v.real for v in values], [v.imag for v in values]])
        target = phi @ t.apply(a).coords
        rhs = np.array([target.real, target.imag])
        coeff, *_ = np.linalg.lstsq(span, rhs, rcond=None)
        scale = 1.0 + np.linalg.norm(phi) * t.frobenius() * element_norm(a)
        residual = float(np.linalg.norm(rhs - span @ coeff)) / scale
        entries.append({"trial": trial, "residual": residual, "a": _coords_pairs(a)})
    return make_report(
        name="weak-local",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
    )


def check_dissipative(
    t: ComplexLinearMap, trials: int = 200, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Re phi(T(a)) over norming pairs (phi, a) built from the SVD.

    Derivations satisfy this with equality; the check passes when no
    sampled real part exceeds ``tol``.  Matrix systems only.
    """
    system = t.system
    if system.kind != KIND_MATRIX:
        raise UnsupportedSystem("dissipativity sampling needs SVD norming functionals")
    entries = []
    re_values = []
    for trial in range(trials):
        rng = substream(seed, trial)
        raw = to_matrix(random_element(system, rng))
        sv = np.linalg.svd(raw, compute_uv=False)
        a = from_matrix(system, raw / sv[0])
        phi = _norming_functional(a)
        value = float((phi @ t.apply(a).coords).real)
        re_values.append(value)
        entries.append({"trial": trial, "residual": max(value, 0.0)})
    checks = {
        "max_re": max(re_values, default=0.0),
        "min_re": min(re_values, default=0.0),
    }
    return make_report(
        name="dissipative",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
        checks=checks,
    )


def check_tripotent_identities(
    t: ComplexLinearMap, trials: int = 50, seed: int = 0, tol: float = DEFAULT_TOL
) -> CheckReport:
    """The three tripotent identities at random tripotents, plus the
    Peirce-2 range variant P_0(e) T(a) = 0 for a in the range of P_2(e)."""
    system = t.system
    entries = []
    for trial in range(trials):
        rng = substream(seed, trial)
        e = random_tripotent(system, int(rng.integers(0, 2**32)))
        at_e = derivation_at_tripotent_identities(t, e, tol)
        a = peirce_projection(e, 2).apply(random_element(system, rng))
        scale = 1.0 + t.frobenius() * element_norm(a)
        range_residual = element_norm(peirce_projection(e, 0).apply(t.apply(a))) / scale
        residual = max(at_e.max_residual, range_residual)
        entries.append({"trial": trial, "residual": residual, "e": _coords_pairs(e)})
    return make_report(
        name="tripotent-identities",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[w["residual"] for w in entries],
        witnesses=worst_witnesses(entries, WITNESS_KEEP),
    )


def _fold_seed(seed: int, index: int) -> int:
    return seed * 1000003 + index


def classify(
    t: ComplexLinearMap,
    basis: DerivationBasis,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Run the four equivalent conditions and flag verdict agreement.

    The verdicts are: Leibniz (exact), (h1) and (h2) combined, local
    (sampled), weak-local (sampled).  ``pass`` means all four agree;
    ``max_residual`` is 0.0 on agreement and 1.0 otherwise.
    """
    rep_derivation = is_triple_derivation(t, tol)
    rep_h1 = check_h1(t, trials, _fold_seed(seed, 1), tol)
    rep_h2 = check_h2(t, trials, _fold_seed(seed, 2), tol)
    rep_local = check_local(t, basis, trials, _fold_seed(seed, 3), tol)
    rep_weak = check_weak_local(t, basis, trials, _fold_seed(seed, 4), tol)

    verdicts = {
        "derivation": rep_derivation.passed,
        "h_conditions": rep_h1.passed and rep_h2.passed,
        "local": rep_local.passed,
        "weak_local": rep_weak.passed,
    }
    agreement = len(set(verdicts.values())) == 1
    checks = dict(verdicts)
    checks.update(
        {
            "h1": rep_h1.passed,
            "h2": rep_h2.passed,
            "agreement": agreement,
            "derivation_residual": rep_derivation.max_residual,
            "h1_residual": rep_h1.max_residual,
            "h2_residual": rep_h2.max_residual,
            "local_residual": rep_local.max_residual,
            "weak_local_residual": rep_weak.max_residual,
        }
    )
    return make_report(
        name="classify",
        trials=trials,
        seed=seed,
        tol=tol,
        residuals=[0.0 if agreement else 1.0],
        checks=checks,
        passed=agreement,
    )


def commutator_map(x0: Element) -> ComplexLinearMap:
    """a -> x0 a - a x0 on the square matrix system of x0.

    Warns when x0 is normal, in which case the map can be a derivation.
    """
    system = x0.system
    if system.kind != KIND_MATRIX or system.shape[0] != system.shape[1]:
        raise UnsupportedSystem("commutator maps live on square matrix systems")
    n = system.shape[0]
    mat = to_matrix(x0)
    defect = np.linalg.norm(mat @ mat.conj().T - mat.conj().T @ mat)
    if defect <= 1e-12 * (np.linalg.norm(mat) ** 2 + 1.0):
        warnings.warn(
            "commutator seed element is normal; the map may be a derivation",
            NormalElementWarning,
        )
    eye = np.eye(n, dtype=complex)
    # row-major vec: vec(x0 a) = (x0 kron I) vec(a), vec(a x0) = (I kron x0^T) vec(a)
    entries = np.kron(mat, eye) - np.kron(eye, mat.T)
    return complex_map(system, entries)


def commutator_counterexample(n: int, x0: Element | None = None) -> ComplexLinearMap:
    """The commutator map on M(n, n) with default seed element E_12.

    Satisfies (h1) yet is not a derivation whenever x0 is non-normal.
    """
    if n < 2 and x0 is None:
        raise UnsupportedSystem("the default seed element needs n >= 2")
    if x0 is None:
        system = make_matrix_triple(n, n)
        mat = np.zeros((n, n), dtype=complex)
        mat[0, 1] = 1.0
        x0 = from_matrix(system, mat)
    return commutator_map(x0)
