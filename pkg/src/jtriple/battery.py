"""Agreement battery over a mixed population of candidate maps.

Generates derivation-span samples, generic Gaussian maps, perturbed
derivations, and commutator maps, classifies each, and reports whether
the four locality verdicts agreed pairwise on every case.
"""

from __future__ import annotations

import warnings

import numpy as np

from .core import DEFAULT_TOL, KIND_MATRIX, TripleSystem, random_element
from .derivations import DerivationBasis, derivation_basis
from .errors import NormalElementWarning
from .locality import classify, commutator_map
from .operators import ComplexLinearMap, complex_map
from .rng import complex_normal, substream

DEFAULT_COUNTS = {"span": 30, "generic": 30, "perturbed": 30, "commutator": 10}
PERTURBATION = 1e-3


def _span_sample(basis: DerivationBasis, rng: np.random.Generator) -> ComplexLinearMap:
    coeff = rng.standard_normal(basis.dim_real)
    entries = sum(c * delta.entries for c, delta in zip(coeff, basis.basis))
    return complex_map(basis.system, entries)


def _generic_sample(system: TripleSystem, rng: np.random.Generator) -> ComplexLinearMap:
    return complex_map(system, complex_normal(rng, (system.dim, system.dim)))


def _commutator_sample(system: TripleSystem, rng: np.random.Generator) -> ComplexLinearMap:
    for _ in range(16):
        x0 = random_element(system, rng)
        with warnings.catch_warnings():
            warnings.simplefilter("error", NormalElementWarning)
            try:
                return commutator_map(x0)
            except NormalElementWarning:
                continue
    raise RuntimeError("could not draw a non-normal seed element")


def generate_battery_maps(
    system: TripleSystem, basis: DerivationBasis, seed: int, counts: dict | None = None
):
    """Deterministic list of (kind, index, map) battery cases."""
    counts = dict(DEFAULT_COUNTS, **(counts or {}))
    square = system.kind == KIND_MATRIX and system.shape[0] == system.shape[1]
    if not square:
        counts["commutator"] = 0
    cases = []
    for kind_index, kind in enumerate(("span", "generic", "perturbed", "commutator")):
        for index in range(counts.get(kind, 0)):
            rng = substream(seed, kind_index, index)
            if kind == "span":
                candidate = _span_sample(basis, rng)
            elif kind == "generic":
                candidate = _generic_sample(system, rng)
            elif kind == "perturbed":
                candidate = _span_sample(basis, rng) + PERTURBATION * _generic_sample(
                    system, rng
                )
            else:
                candidate = _commutator_sample(system, rng)
            cases.append((kind, index, candidate))
    return cases


def run_battery(
    system: TripleSystem,
    basis: DerivationBasis | None = None,
    trials: int = 50,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    counts: dict | None = None,
) -> dict:
    """Classify every generated map; pass iff all verdicts agree pairwise."""
    if basis is None:
        basis = derivation_basis(system)
    cases = []
    all_agree = True
    for case_index, (kind, index, candidate) in enumerate(
        generate_battery_maps(system, basis, seed, counts)
    ):
        report = classify(candidate, basis, trials=trials, seed=seed * 7919 + case_index, tol=tol)
        agreement = bool(report.checks["agreement"])
        all_agree = all_agree and agreement
        cases.append(
            {
                "kind": kind,
                "index": index,
                "agreement": agreement,
                "verdicts": {
                    name: bool(report.checks[name])
                    for name in ("derivation", "h_conditions", "local", "weak_local")
                },
            }
        )
    return {
        "name": "battery",
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "dim_real": basis.dim_real,
        "cases": cases,
        "agreement": all_agree,
        "pass": all_agree,
    }
