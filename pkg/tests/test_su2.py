import numpy as np
import pytest
from scipy.linalg import expm

from hpsphere.irreps import lambda_batch
from hpsphere.su2 import (
    EPS,
    IDENTITY,
    AlgebraElement,
    GroupElement,
    chart_section,
    exp_map,
    haar_batch,
    haar_sample,
    maurer_cartan,
)


def test_group_element_validation():
    with pytest.raises(ValueError):
        GroupElement(1, 1)
    g = haar_sample(0)
    np.testing.assert_allclose(g.matrix() @ g.matrix().conj().T, np.eye(2), atol=1e-14)
    assert abs(np.linalg.det(g.matrix()) - 1) < 1e-14


def test_group_product_matches_matrices():
    g, h = haar_sample(1), haar_sample(2)
    np.testing.assert_allclose((g * h).matrix(), g.matrix() @ h.matrix(), atol=1e-14)
    np.testing.assert_allclose((g * g.inverse()).matrix(), np.eye(2), atol=1e-14)
    assert GroupElement.from_matrix(g.matrix()) == g


def test_algebra_basis_is_su2():
    for e in EPS:
        assert abs(np.trace(e)) == 0
        np.testing.assert_allclose(e + e.conj().T, 0)


def test_exp_examples():
    assert exp_map(AlgebraElement()) == IDENTITY
    t = 0.7
    g = exp_map(AlgebraElement(x1=t))
    assert abs(g.a - np.exp(1j * t)) < 1e-15 and abs(g.b) < 1e-15
    g = exp_map(AlgebraElement(x2=np.pi / 2))
    assert abs(g.a) < 1e-15 and abs(g.b - 1) < 1e-15


def test_exp_matches_matrix_exponential():
    rng = np.random.default_rng(0)
    for _ in range(20):
        xi = AlgebraElement(*rng.standard_normal(3) * 2)
        np.testing.assert_allclose(exp_map(xi).matrix(), expm(xi.matrix()), atol=1e-13)


def test_chart_section_examples():
    assert chart_section(0) == IDENTITY
    g = chart_section(1)
    assert abs(g.a - 2**-0.5) < 1e-15 and abs(g.b - 2**-0.5) < 1e-15
    g = chart_section(2 + 1j)
    assert abs(abs(g.a) ** 2 + abs(g.b) ** 2 - 1) < 1e-14


def test_haar_deterministic_and_unit():
    a1, b1 = haar_batch(50, 11)
    a2, b2 = haar_batch(50, 11)
    np.testing.assert_array_equal(a1, a2)
    np.testing.assert_array_equal(b1, b2)
    assert np.abs(np.abs(a1) ** 2 + np.abs(b1) ** 2 - 1).max() < 1e-14
    assert haar_sample(4) == haar_sample(4)


def test_haar_schur_orthogonality():
    # the matrix coefficient of a nontrivial irreducible integrates to zero
    a, b = haar_batch(100_000, 0)
    L = lambda_batch(a, b, 1)
    assert abs(L[:, 0, 0].mean()) < 0.02
    # and |Lambda_00|^2 averages to 1 / dim
    assert abs(np.mean(np.abs(L[:, 0, 0]) ** 2) - 0.5) < 0.01


def test_maurer_cartan_at_origin():
    # d s(w) at w = 0 along 1 is [[0, 1], [-1, 0]]: omega = 0, phi = 1
    mc = maurer_cartan(0)
    assert abs(mc.omega) < 1e-9 and abs(mc.phi - 1) < 1e-9
    assert mc.residual < 1e-9
    mc_i = maurer_cartan(0, 1j)
    assert abs(mc_i.phi - 1j) < 1e-9


def test_maurer_cartan_linear_in_direction():
    w = 0.3 - 0.4j
    base = maurer_cartan(w, 1 + 0.5j)
    scaled = maurer_cartan(w, 2.5 * (1 + 0.5j))
    assert abs(scaled.omega - 2.5 * base.omega) < 1e-8
    assert abs(scaled.phi - 2.5 * base.phi) < 1e-8


def test_maurer_cartan_analytic():
    # analytic derivative of the section as oracle
    w, d = 0.6 + 0.2j, np.exp(0.3j)
    r2 = 1 + abs(w) ** 2
    a, b = 1 / np.sqrt(r2), w / np.sqrt(r2)
    dr = (w.conjugate() * d).real / r2**1.5
    da, db = -dr, d / np.sqrt(r2) - w * dr
    dg = np.array([[da, db], [-np.conj(db), np.conj(da)]])
    g = np.array([[a, b], [-np.conj(b), np.conj(a)]])
    theta = dg @ g.conj().T
    mc = maurer_cartan(w, d)
    assert abs(mc.omega - theta[0, 0].imag) < 1e-9
    assert abs(mc.phi - theta[0, 1]) < 1e-9
    np.testing.assert_allclose(mc.matrix(), theta, atol=1e-9)
