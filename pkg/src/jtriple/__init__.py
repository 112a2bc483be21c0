"""Finite-dimensional JB*-triples: construction, Peirce calculus,
derivation spaces, and locality check batteries."""

from .core import (
    DEFAULT_TOL,
    Element,
    TripleSystem,
    element,
    element_norm,
    from_matrix,
    make_custom_triple,
    make_hilbert_triple,
    make_matrix_triple,
    to_matrix,
    triple_product,
    validate_axioms,
)
from .derivations import (
    DerivationBasis,
    check_cube_identity,
    derivation_at_tripotent_identities,
    derivation_basis,
    inner_derivation,
    is_triple_derivation,
    leibniz_residual,
    polarization_check,
)
from .locality import (
    check_dissipative,
    check_h1,
    check_h2,
    check_local,
    check_tripotent_identities,
    check_weak_local,
    classify,
    commutator_counterexample,
    commutator_map,
)
from .battery import run_battery
from .operators import (
    ComplexLinearMap,
    RealLinearOperator,
    as_complex_linear,
    complex_map,
    identity_map,
    l_operator,
    q_operator,
    spectral_radius,
)
from .peirce import (
    PeirceDecomposition,
    are_orthogonal,
    is_minimal,
    is_tripotent,
    peirce_decompose,
    peirce_projection,
    random_tripotent,
    tripotent_leq,
)
from .report import CheckReport
from .spectral import (
    SpectralDecomposition,
    odd_power,
    odd_root,
    range_tripotent,
    spectral_tripotent_decomposition,
    support_tripotent,
)

__version__ = "0.1.0"
