import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gllmass.orthopoly import legendre_values
from gllmass.quadrature import NodeFamily, gauss_lobatto_nodes, make_nodes
from gllmass.transform import (
    cardinal_eval,
    interpolation_matrix,
    lagrange_product,
    modal_to_nodal,
    nodal_to_modal,
)

FAMILIES = list(NodeFamily)


def product_cardinal(nodes, j, x):
    out = 1.0
    for i, xi in enumerate(nodes):
        if i != j:
            out *= (x - xi) / (nodes[j] - xi)
    return out


def test_modal_to_nodal_examples():
    assert modal_to_nodal([1, 0, 0, 0], gauss_lobatto_nodes(3)) == pytest.approx(np.ones(4))
    assert modal_to_nodal([0, 1], gauss_lobatto_nodes(1)).tolist() == [-1.0, 1.0]
    assert modal_to_nodal([0, 0, 1], gauss_lobatto_nodes(2)) == pytest.approx([1, -0.5, 1], abs=1e-15)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        modal_to_nodal([1, 2, 3], gauss_lobatto_nodes(3))
    with pytest.raises(ValueError):
        nodal_to_modal([1, 2], gauss_lobatto_nodes(3))


def test_nodal_to_modal_examples():
    g = gauss_lobatto_nodes(5)
    assert nodal_to_modal(np.ones(6), g) == pytest.approx([1, 0, 0, 0, 0, 0], abs=1e-14)
    b = nodal_to_modal(legendre_values(5, g.nodes), g)
    assert b == pytest.approx([0, 0, 0, 0, 0, 1], abs=1e-14)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("N", range(1, 17))
def test_transform_pair_is_inverse(family, N, rng):
    g = make_nodes(family, N)
    b = rng.standard_normal(N + 1)
    assert np.max(np.abs(nodal_to_modal(modal_to_nodal(b, g), g) - b)) <= 1e-12
    u = rng.standard_normal(N + 1)
    assert np.max(np.abs(modal_to_nodal(nodal_to_modal(u, g), g) - u)) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(1, 16), st.data())
def test_roundtrip_property(family, N, data):
    g = make_nodes(family, N)
    b = data.draw(arrays(float, N + 1, elements=st.floats(-1e3, 1e3)))
    assert np.allclose(nodal_to_modal(modal_to_nodal(b, g), g), b, rtol=0, atol=1e-12 * max(1.0, np.abs(b).max()))


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("N", [1, 2, 5, 9, 16])
def test_cardinal_kronecker(family, N):
    g = make_nodes(family, N)
    for j in range(N + 1):
        vals = cardinal_eval(j, g.nodes, g)
        assert np.max(np.abs(vals - np.eye(N + 1)[j])) <= 1e-12


def test_cardinal_linear():
    assert cardinal_eval(0, 0.0, gauss_lobatto_nodes(1)) == pytest.approx(0.5, abs=1e-15)


def test_cardinal_bad_index():
    with pytest.raises(IndexError):
        cardinal_eval(3, 0.0, gauss_lobatto_nodes(2))


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("N", range(1, 17))
def test_cardinal_matches_product_form(family, N, rng):
    g = make_nodes(family, N)
    x = rng.uniform(-1, 1, 100)
    for j in range(N + 1):
        expected = np.array([product_cardinal(g.nodes, j, t) for t in x])
        assert np.max(np.abs(cardinal_eval(j, x, g) - expected)) <= 1e-11


def test_partition_of_unity(rng):
    g = gauss_lobatto_nodes(7)
    x = rng.uniform(-1, 1, 20)
    total = sum(cardinal_eval(j, x, g) for j in range(8))
    assert np.max(np.abs(total - 1)) <= 1e-13


def test_interpolation_matrix_examples():
    g = gauss_lobatto_nodes(6)
    assert np.array_equal(interpolation_matrix(g, g.nodes), np.eye(7))
    I = interpolation_matrix(gauss_lobatto_nodes(1), [-1, 0, 1])
    assert I == pytest.approx(np.array([[1, 0], [0.5, 0.5], [0, 1]]), abs=1e-15)
    assert interpolation_matrix(g, np.linspace(-1, 1, 11)) @ np.ones(7) == pytest.approx(np.ones(11), abs=1e-14)


def test_lagrange_product_agrees(rng):
    g = gauss_lobatto_nodes(10)
    x = rng.uniform(-1, 1, 30)
    assert np.max(np.abs(lagrange_product(g.nodes, x) - interpolation_matrix(g, x))) <= 1e-12


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("N", [1, 3, 8, 16])
def test_interpolation_reproduces_polynomials(family, N, rng):
    g = make_nodes(family, N)
    coeffs = rng.standard_normal(N + 1)
    poly = np.polynomial.Polynomial(coeffs)
    x = rng.uniform(-1, 1, 40)
    assert np.max(np.abs(interpolation_matrix(g, x) @ poly(g.nodes) - poly(x))) <= 1e-12 * max(1, np.abs(coeffs).sum())
