import numpy as np
import pytest

import jtriple as jt


@pytest.fixture(scope="session")
def m11():
    return jt.make_matrix_triple(1, 1)


@pytest.fixture(scope="session")
def h2():
    return jt.make_matrix_triple(1, 2)


@pytest.fixture(scope="session")
def m2():
    return jt.make_matrix_triple(2, 2)


@pytest.fixture(scope="session")
def m23():
    return jt.make_matrix_triple(2, 3)


@pytest.fixture(scope="session")
def m2_basis(m2):
    return jt.derivation_basis(m2)


@pytest.fixture(scope="session")
def m2_custom(m2):
    """The M(2,2) structure tensor wrapped as an opaque custom system."""
    return jt.make_custom_triple(4, m2.structure)


def direct_matrix_product(x, y, z):
    """Independent oracle: {x,y,z} = (x y* z + z y* x) / 2 on matrices."""
    return 0.5 * (x @ y.conj().T @ z + z @ y.conj().T @ x)


def gaussian_matrix(rng, rows, cols):
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


@pytest.fixture(scope="session")
def oracle():
    return direct_matrix_product
