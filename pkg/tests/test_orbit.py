import numpy as np
import pytest

from hpsphere.classify import Kind, base_point_for, enumerate_families, make_family
from hpsphere.irreps import RepSum, weight_vector
from hpsphere.orbit import (
    BasePoint,
    NotConformalError,
    base_point_from_vector,
    closed_form_curvature,
    curvature_report,
    derivative_consistency,
    immerse,
    immerse_batch,
    minimality_residual,
    numeric_curvature,
    numeric_metric,
    tangent_data,
)
from hpsphere.quaternion import Quaternion, QuatVector, qinner
from hpsphere.su2 import AlgebraElement, exp_map

SQ = np.sqrt


def family_points(n_max=4):
    for n in range(1, n_max + 1):
        for fam in enumerate_families(n):
            yield fam, base_point_for(fam, 0.6 if fam.kind.value == "f-lambda-m-t" else None)


def random_unit_quaternion(rng):
    x = rng.standard_normal(4)
    x /= np.linalg.norm(x)
    return Quaternion(x[0] + 1j * x[1], x[2] + 1j * x[3])


# -- base points ----------------------------------------------------------


def test_base_point_validation():
    rep = RepSum((2,))
    with pytest.raises(ValueError):
        BasePoint(rep, 2, [1])          # even weight
    with pytest.raises(ValueError):
        BasePoint(rep, 3, [0.5])        # not unit
    with pytest.raises(ValueError):
        BasePoint(RepSum((1, 2)), 3, [0.6, 0.8])   # weight 3 missing from block 0
    z = BasePoint.normalized(rep, 1, [3j])
    assert abs(z.c[0] - 1j) < 1e-15


# -- tangent data ---------------------------------------------------------


def test_tangent_top_weight():
    td = tangent_data(BasePoint(RepSum((2,)), 3, [1]))
    assert abs(td.ell) == 0
    assert td.X.norm2() == pytest.approx(3, abs=1e-14)
    assert td.Y.norm2() == pytest.approx(0, abs=1e-14)


def test_tangent_weight_one_single_block():
    td = tangent_data(BasePoint(RepSum((1,)), 1, [1]))
    assert td.ell.isclose(Quaternion(0, 1j))
    assert td.ell_prime == pytest.approx(1)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_tangent_isotropic_pair(m):
    td = tangent_data(BasePoint(RepSum((m, m)), 1, [1 / SQ(2), 1j / SQ(2)]))
    assert abs(td.ell) < 1e-15


def test_ell_closed_form():
    rng = np.random.default_rng(0)
    rep = RepSum((1, 2, 3, 4))
    for _ in range(10):
        z = BasePoint.normalized(rep, 1, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        ell = tangent_data(z).ell
        L = sum((-1) ** (m + 1) * m * c**2 for m, c in zip(rep.blocks, z.c))   # a_{1, n} = m
        assert abs(ell.a) < 1e-14
        assert abs(ell.b - 1j * L) < 1e-13


def test_single_block_higher_weight_has_no_ell():
    for m in range(2, 5):
        for lam in range(3, 2 * m, 2):
            assert abs(tangent_data(BasePoint(RepSum((m,)), lam, [1])).ell) == 0


def test_tangent_orthogonality_for_families():
    # conformality of the orbit: the (1,0) parts X and Y are orthogonal
    for fam, z in family_points():
        td = tangent_data(z)
        assert abs(qinner(td.X, td.Y)) < 1e-12, fam.label


# -- closed-form curvature ------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_curvature_f_one(n):
    z = BasePoint(RepSum((n + 1,)), 1, [1])
    assert closed_form_curvature(z) == pytest.approx(4 / (n * (n + 2)), rel=1e-12)


def test_curvature_examples():
    assert closed_form_curvature(BasePoint(RepSum((2,)), 3, [1])) == pytest.approx(4 / 3)
    z = BasePoint(RepSum((1, 2)), 1, [SQ(1 / 3), SQ(2 / 3)])
    assert closed_form_curvature(z) == pytest.approx(1.0)


# -- minimality -----------------------------------------------------------


def test_families_are_minimal():
    for fam, z in family_points(6):
        assert minimality_residual(z) < 1e-10, fam.label


def test_negative_control_residual():
    z = BasePoint(RepSum((2, 3)), 3, [1 / SQ(2), 1 / SQ(2)])
    assert minimality_residual(z) == pytest.approx(2.5, abs=1e-9)


def test_odd_pair_solution():
    z = BasePoint(RepSum((1, 2)), 1, [SQ(1 / 3), SQ(2 / 3)])
    assert minimality_residual(z) < 1e-10


def test_case_one_obstruction():
    # distinct a_{lam, alpha}^2 cannot share the eigenvalue p
    rng = np.random.default_rng(1)
    for _ in range(5):
        c = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        z = BasePoint.normalized(RepSum((2, 3)), 3, c)
        assert minimality_residual(z) > 1e-3
    for c in ([1, 0], [0, 1]):
        assert minimality_residual(BasePoint(RepSum((2, 3)), 3, c)) < 1e-12


def test_weight_one_generic_is_not_minimal():
    z = BasePoint.normalized(RepSum((1, 2)), 1, [1, 1])
    assert minimality_residual(z) > 1e-3


def test_minimality_phase_invariant():
    for fam, z in family_points(3):
        for phase in (0.3, 1.1, 2.9):
            w = BasePoint(z.rep, z.lam, z.c * np.exp(1j * phase))
            assert minimality_residual(w) < 1e-10, fam.label


def test_gauge_covariance():
    # q z spans the same quaternionic line; the normal form recovers it
    rng = np.random.default_rng(2)
    for fam, z in family_points(3):
        q = random_unit_quaternion(rng)
        back = base_point_from_vector(z.rep, z.lam, z.vector().scale(q))
        assert minimality_residual(back) < 1e-10, fam.label
        assert closed_form_curvature(back) == pytest.approx(closed_form_curvature(z), rel=1e-12)


def test_base_point_from_vector_rejects_other_weights():
    rep = RepSum((2,))
    v = weight_vector(rep, 0, 3) + weight_vector(rep, 0, 1)
    with pytest.raises(ValueError):
        base_point_from_vector(rep, 3, v)


# -- orbit map and numerics -----------------------------------------------


def test_immerse_identity_and_norm():
    rng = np.random.default_rng(3)
    for fam, z in family_points(3):
        np.testing.assert_allclose(immerse(z, 0).packed(), z.packed(), atol=1e-15)
        for w in rng.standard_normal(3) + 1j * rng.standard_normal(3):
            assert abs(immerse(z, w).norm() - 1) < 1e-12


def test_immerse_block_one():
    # z = u, so z Xi(s(1)) is the single entry Xi_00 = a + i b j with a = b = 1/sqrt(2)
    q = immerse(BasePoint(RepSum((1,)), 1, [1]), 1.0)[0]
    assert q.isclose(Quaternion(1 / SQ(2), 1j / SQ(2)))


def test_immerse_routes_agree():
    z = base_point_for(enumerate_families(3)[4], 0.4)
    ws = np.array([0.1 + 0.2j, -0.7, 1.5j])
    batch = immerse_batch(z, ws)
    for w, row in zip(ws, batch):
        np.testing.assert_allclose(immerse(z, w).packed(), row, atol=1e-13)


def test_metric_conformal_for_families():
    for fam, z in family_points(3):
        g = numeric_metric(z, 0.3 + 0.2j)
        assert abs(g.g_xy) / g.g_xx < 1e-8, fam.label
        assert abs(g.g_xx - g.g_yy) / g.g_xx < 1e-8, fam.label
        assert g.conformal_factor > 0


def test_metric_round_sphere_profile():
    # homogeneous: L(w) = L(0) / (1 + |w|^2)^2
    z = BasePoint(RepSum((2,)), 3, [1])
    ratio = numeric_metric(z, 0).conformal_factor / numeric_metric(z, 1).conformal_factor
    assert ratio == pytest.approx(4, rel=1e-8)
    # and L(0) = |X|^2 + |Y|^2 = 4 / K
    assert numeric_metric(z, 0).conformal_factor == pytest.approx(3, rel=1e-8)


def test_numeric_curvature_examples():
    assert numeric_curvature(BasePoint(RepSum((3,)), 1, [1]), 0.4 - 0.1j) == pytest.approx(0.5, rel=1e-3)
    assert numeric_curvature(BasePoint(RepSum((2,)), 3, [1]), 0) == pytest.approx(4 / 3, rel=1e-3)
    z = BasePoint(RepSum((1, 3)), 1, [SQ(1 / 4), 1j * SQ(3 / 4)])
    assert numeric_curvature(z, 0.2j) == pytest.approx(4 / 9, rel=1e-3)


def test_curvature_report_constant():
    z = BasePoint(RepSum((1, 2)), 1, [SQ(1 / 3), SQ(2 / 3)])
    rep = curvature_report(z, samples=20, seed=4)
    assert rep.K_closed == pytest.approx(1.0)
    assert abs(rep.K_numeric_mean - 1) < 1e-3
    assert rep.K_numeric_std < 1e-3
    assert rep.conformality_residual < 1e-8


def test_not_conformal_seed():
    rng = np.random.default_rng(5)
    rep = RepSum((2,))
    v = QuatVector(rng.standard_normal(2) + 1j * rng.standard_normal(2), rng.standard_normal(2) + 1j * rng.standard_normal(2))
    v = QuatVector(v.a / v.norm(), v.b / v.norm())
    with pytest.raises(NotConformalError):
        numeric_curvature((rep, v), 0.1)


def test_bad_steps():
    z = BasePoint(RepSum((1,)), 1, [1])
    with pytest.raises(ValueError):
        numeric_metric(z, 0, h=0)
    with pytest.raises(ValueError):
        numeric_curvature(z, 0, h=-1)


# -- derivative consistency -----------------------------------------------


def test_derivative_consistency_families():
    for fam, z in family_points(3):
        assert derivative_consistency(z, 0) < 1e-6, fam.label
        assert derivative_consistency(z, 0.4 - 0.3j, direction=1j) < 1e-6, fam.label


def test_derivative_consistency_second_order():
    z = BasePoint(RepSum((1, 2)), 1, [SQ(1 / 3), SQ(2 / 3)])
    coarse = derivative_consistency(z, 0.5 + 0.5j, h=1e-2)
    fine = derivative_consistency(z, 0.5 + 0.5j, h=5e-3)
    assert 3.5 < coarse / fine < 4.5


def test_weight_vector_rotation():
    # along exp(t eps1) the orbit moves as z -> e^{i lam t} z, since zH = lam z
    rep = RepSum((3,))
    for lam in (1, 3, 5):
        z = weight_vector(rep, 0, lam).packed()
        h = 1e-5
        plus = z @ rep.right_matrix(exp_map(AlgebraElement(x1=h)))
        minus = z @ rep.right_matrix(exp_map(AlgebraElement(x1=-h)))
        np.testing.assert_allclose((plus - minus) / (2 * h), 1j * lam * z, atol=1e-9)


def test_t_family_reflection():
    # the real rotation (c0, c1) -> (c1, -c0) of two equal blocks commutes with rho and
    # carries the t-orbit onto i times the (pi/2 - t)-orbit: same curve in HP^n
    fam = make_family(Kind.F_LAMBDA_M_T, 3, lam=3)
    t = 0.3
    ws = np.array([0, 0.4 + 0.1j, -1.2j])
    a = immerse_batch(base_point_for(fam, t), ws)
    b = immerse_batch(base_point_for(fam, np.pi / 2 - t), ws)
    m = 2
    rotated = a.copy()
    for half in (0, 2 * m):
        first, second = a[:, half : half + m], a[:, half + m : half + 2 * m]
        rotated[:, half : half + m], rotated[:, half + m : half + 2 * m] = second, -first
    np.testing.assert_allclose(rotated, 1j * b, atol=1e-12)
