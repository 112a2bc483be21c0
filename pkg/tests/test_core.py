import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import jtriple as jt
from jtriple.core import coord_norm, jordan_residual, random_element
from jtriple.errors import InvalidSystem, SystemMismatch
from jtriple.rng import substream

from conftest import direct_matrix_product, gaussian_matrix


def test_scalar_triple_is_x_ybar_z(m11):
    rng = substream(10)
    x, y, z = (complex(*rng.standard_normal(2)) for _ in range(3))
    out = jt.triple_product(
        jt.element(m11, [x]), jt.element(m11, [y]), jt.element(m11, [z])
    )
    assert out.coords[0] == pytest.approx(x * np.conj(y) * z)


def test_matrix_example_e11_e11_e12(m2):
    # direct formula: E11 E11* E12 = E12, E12 E11* E11 = 0, so half of E12
    e11 = jt.element(m2, [1, 0, 0, 0])
    e12 = jt.element(m2, [0, 1, 0, 0])
    out = jt.triple_product(e11, e11, e12)
    np.testing.assert_allclose(out.coords, [0, 0.5, 0, 0], atol=1e-15)


@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)])
def test_tensor_matches_direct_formula_on_random_matrices(shape):
    system = jt.make_matrix_triple(*shape)
    rng = substream(11, shape[0], shape[1])
    for _ in range(10):
        x, y, z = (gaussian_matrix(rng, *shape) for _ in range(3))
        via_tensor = jt.triple_product(
            jt.from_matrix(system, x), jt.from_matrix(system, y), jt.from_matrix(system, z)
        )
        np.testing.assert_allclose(
            jt.to_matrix(via_tensor), direct_matrix_product(x, y, z), atol=1e-12
        )


def test_tensor_matches_direct_formula_on_all_basis_triples(m2):
    units = [jt.to_matrix(jt.element(m2, row)) for row in np.eye(4)]
    for i, x in enumerate(units):
        for j, y in enumerate(units):
            for k, z in enumerate(units):
                expected = direct_matrix_product(x, y, z).reshape(-1)
                np.testing.assert_allclose(m2.structure[i, j, k], expected, atol=1e-15)


def test_hilbert_triple_is_the_inner_product_formula(h2):
    rng = substream(12)
    for _ in range(10):
        x, y, z = (gaussian_matrix(rng, 1, 2).reshape(-1) for _ in range(3))
        out = jt.triple_product(
            jt.element(h2, x), jt.element(h2, y), jt.element(h2, z)
        )
        expected = 0.5 * ((x @ np.conj(y)) * z + (z @ np.conj(y)) * x)
        np.testing.assert_allclose(out.coords, expected, atol=1e-12)


def test_outer_symmetry_and_middle_conjugate_linearity(m2):
    rng = substream(13)
    x, y, z = (random_element(m2, rng) for _ in range(3))
    sym = jt.triple_product(x, y, z) - jt.triple_product(z, y, x)
    assert coord_norm(sym) < 1e-12
    alpha = complex(*rng.standard_normal(2))
    scaled = jt.triple_product(x, alpha * y, z)
    expected = np.conj(alpha) * jt.triple_product(x, y, z)
    assert coord_norm(scaled - expected) < 1e-12


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_property_middle_slot_conjugates_any_scalar(seed):
    system = jt.make_matrix_triple(2, 2)
    rng = substream(seed)
    x, y, z = (random_element(system, rng) for _ in range(3))
    alpha = complex(*rng.standard_normal(2))
    lhs = jt.triple_product(x, alpha * y, z)
    rhs = np.conj(alpha) * jt.triple_product(x, y, z)
    assert coord_norm(lhs - rhs) <= 1e-10 * (1 + abs(alpha))


def test_jordan_identity_on_random_tuples(m23):
    rng = substream(14)
    for _ in range(20):
        vals = [random_element(m23, rng) for _ in range(5)]
        scale = 1.0 + np.prod([coord_norm(v) for v in vals])
        assert coord_norm(jordan_residual(*vals)) / scale < 1e-12


def test_validate_axioms_passes_on_matrix_triples(m2):
    report = jt.validate_axioms(m2, samples=100, seed=0)
    assert report.passed
    assert report.max_residual < 1e-9
    assert set(report.checks) == {
        "outer_symmetry",
        "jordan_identity",
        "l_operator_spectrum",
        "norm_consistency",
    }


def test_validate_axioms_scalar_triple(m11):
    assert jt.validate_axioms(m11, samples=50, seed=1).passed


def test_validate_axioms_rejects_perturbed_tensor(m2):
    tensor = np.array(m2.structure)
    tensor[0, 0, 0, 0] += 0.1
    bad = jt.make_custom_triple(4, tensor)
    report = jt.validate_axioms(bad, samples=50, seed=2)
    assert not report.passed
    assert report.checks["jordan_identity"] > 1e-3


def test_validate_axioms_flags_outer_asymmetry(m2):
    tensor = np.array(m2.structure)
    tensor[0, 1, 2, 3] += 0.1  # breaks c[i,j,k] = c[k,j,i]
    bad = jt.make_custom_triple(4, tensor)
    report = jt.validate_axioms(bad, samples=10, seed=3)
    assert not report.passed
    assert report.checks["outer_symmetry"] > 1e-3


def test_custom_round_trip_same_products(m2, m2_custom):
    rng = substream(15)
    for _ in range(5):
        coords = [rng.standard_normal(4) + 1j * rng.standard_normal(4) for _ in range(3)]
        on_matrix = jt.triple_product(*(jt.element(m2, c) for c in coords))
        on_custom = jt.triple_product(*(jt.element(m2_custom, c) for c in coords))
        np.testing.assert_allclose(on_matrix.coords, on_custom.coords, atol=1e-14)


def test_custom_triple_accepts_bad_tensor_until_validated():
    tensor = np.zeros((2, 2, 2, 2), dtype=complex)
    tensor[0, 0, 1, 0] = 1.0  # violates outer symmetry
    system = jt.make_custom_triple(2, tensor)  # construction succeeds
    assert not jt.validate_axioms(system, samples=5, seed=0).passed


def test_custom_triple_rejects_wrong_tensor_size():
    with pytest.raises(InvalidSystem):
        jt.make_custom_triple(3, np.zeros((2, 2, 2, 2)))


def test_make_matrix_triple_rejects_bad_dims():
    with pytest.raises(InvalidSystem):
        jt.make_matrix_triple(0, 2)


def test_element_norm_examples(m2):
    e11 = jt.element(m2, [1, 0, 0, 0])
    assert jt.element_norm(e11) == pytest.approx(1.0)
    assert jt.element_norm(jt.element(m2, [0, 0, 0, 0])) == 0.0
    diag31 = jt.from_matrix(m2, np.diag([3.0, 1.0]))
    assert jt.element_norm(diag31) == pytest.approx(3.0)
    # cross-check: spectral radius of {a,a,.} is the squared norm
    assert jt.spectral_radius(jt.l_operator(diag31, diag31)) == pytest.approx(9.0)


def test_element_norm_homogeneous(m2):
    rng = substream(16)
    a = random_element(m2, rng)
    lam = complex(*rng.standard_normal(2))
    assert jt.element_norm(lam * a) == pytest.approx(abs(lam) * jt.element_norm(a), rel=1e-10)


def test_element_norm_custom_path_matches_matrix(m2, m2_custom):
    rng = substream(17)
    coords = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    assert jt.element_norm(jt.element(m2_custom, coords)) == pytest.approx(
        jt.element_norm(jt.element(m2, coords)), rel=1e-10
    )


def test_system_mismatch_raises(m2, h2):
    a = jt.element(m2, [1, 0, 0, 0])
    b = jt.element(h2, [1, 0])
    with pytest.raises(SystemMismatch):
        jt.triple_product(a, a, b)


def test_element_length_validation(m2):
    with pytest.raises(InvalidSystem):
        jt.element(m2, [1, 0])
