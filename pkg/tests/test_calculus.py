import math

import numpy as np
import pytest

import nksl2r.algebra as al
import nksl2r.calculus as ca
import nksl2r.manifold as mf
import nksl2r.catalog as cat
from nksl2r.errors import (DegenerateInducedMetric, NotSelfAdjoint,
                           OutOfDomain)


def unit_domain_map(fn, name="m", target="product"):
    return ca.SurfaceMap(name, target, ((-1.0, 1.0), (-1.0, 1.0)), fn)


# ------------------------------------------------------------------- jets

def test_jet_matches_analytic_derivatives():
    """Central differences on a polynomial map recover the exact jet."""

    def fn(x, y):
        return np.array([x * x, x * y, y * y, x + y,
                         1.0, x, y, x * x * y])

    s = unit_domain_map(fn)
    j = ca.jet(s, (0.3, -0.2), h=1e-5)
    x, y = 0.3, -0.2
    assert np.allclose(j.fx, [2 * x, y, 0, 1, 0, 1, 0, 2 * x * y], atol=1e-8)
    assert np.allclose(j.fy, [0, x, 2 * y, 1, 0, 0, 1, x * x], atol=1e-8)
    assert np.allclose(j.fxx, [2, 0, 0, 0, 0, 0, 0, 2 * y], atol=1e-5)
    assert np.allclose(j.fyy, [0, 0, 2, 0, 0, 0, 0, 0], atol=1e-5)
    assert np.allclose(j.fxy, [0, 1, 0, 0, 0, 0, 0, 2 * x], atol=1e-6)


def test_surface_map_domain_guard():
    s = unit_domain_map(lambda x, y: np.zeros(8))
    with pytest.raises(OutOfDomain):
        s.require_inside(1.5, 0.0)


def test_grid_stays_inside():
    s = unit_domain_map(lambda x, y: np.zeros(8))
    pts = s.grid(4, 4, inset=0.1)
    assert len(pts) == 16
    for x, y in pts:
        assert -0.9 <= x <= 0.9 and -0.9 <= y <= 0.9


# ----------------------------------------------------------- connections

def geodesic_factor_map(direction):
    m0 = np.asarray(direction, float)

    def fn(x, y):
        return (al.expm_traceless(x * m0 + 0.5 * y * al.SQ_K)).reshape(4)

    return ca.SurfaceMap("geo", "factor", ((-1, 1), (-1, 1)), fn)


def test_sl2_connection_one_parameter_subgroup():
    """Rows of a one-parameter subgroup are parallel along themselves:
    the canonical connection of the bi-invariant metric vanishes on the
    generator direction."""
    s = geodesic_factor_map(al.SQ_I)
    out = ca.sl2_connection(s, (1.0, 0.0), (1.0, 0.0), (0.2, 0.0))
    assert np.abs(out).max() < 1e-6


def test_nk_connection_metric_compatibility():
    """d/dt g(W,W) along X equals 2 g(nabla_X W, W) on a catalog surface."""
    e = cat.get_entry("II_IIa")
    s = e.surface
    at = (0.05, -0.1)
    h = 1e-5

    def w_field(u, t):
        base, t1, t2 = ca.frame_at(s, (u, t), h)
        return mf.to_ambient(t1 + 0.5 * t2)

    def g_ww(u, t):
        base, t1, t2 = ca.frame_at(s, (u, t), h)
        w = t1 + 0.5 * t2
        return mf.nk_metric(w, w)

    lhs = (g_ww(at[0] + 1e-4, at[1]) - g_ww(at[0] - 1e-4, at[1])) / 2e-4
    nw = ca.nk_connection_field(s, (1.0, 0.0), w_field, at,
                                h=h, h_field=1e-4)
    base, t1, t2 = ca.frame_at(s, at, h)
    w0 = t1 + 0.5 * t2
    rhs = 2.0 * mf.nk_metric(nw, w0)
    assert lhs == pytest.approx(rhs, abs=1e-5)


def test_nabla_P_fd_matches_closed_form():
    rng = np.random.default_rng(21)
    import nksl2r.verifier as vf
    for _ in range(5):
        p = vf.random_point(rng)
        zx = vf.random_vector(rng, p)
        zy = vf.random_vector(rng, p)
        fd = ca.nabla_P_fd(zx, zy)
        assert (fd - mf.nabla_P(zx, zy)).max_norm() < 1e-6


def test_nabla_P_relation_through_G():
    """G(X,PY) + P G(X,Y) + 2 J (nabla_X P) Y = 0, with the covariant
    derivative taken by finite differences."""
    rng = np.random.default_rng(22)
    import nksl2r.verifier as vf
    for _ in range(5):
        p = vf.random_point(rng)
        zx = vf.random_vector(rng, p)
        zy = vf.random_vector(rng, p)
        np_fd = ca.nabla_P_fd(zx, zy)
        total = (mf.tensor_G(zx, mf.apply_P(zy))
                 + mf.apply_P(mf.tensor_G(zx, zy))
                 + 2.0 * mf.apply_J(np_fd))
        assert total.max_norm() < 1e-6


def test_connection_chain_self_consistent():
    """Re-adding the torsion correction to nabla recovers the product
    connection exactly (pure algebra, no extra FD error)."""
    e = cat.get_entry("IV_IV")
    s = e.surface
    at = (0.1, 0.2)
    euc = ca.product_connection(s, (1.0, 0.0), (0.0, 1.0), at)
    nk = ca.nk_connection(s, (1.0, 0.0), (0.0, 1.0), at)
    base, t1, t2 = ca.frame_at(s, at, 1e-5)
    v, w = t1, t2
    rebuilt = nk + 0.5 * (mf.apply_J(mf.tensor_G(v, mf.apply_P(w)))
                          + mf.apply_J(mf.tensor_G(w, mf.apply_P(v))))
    assert (rebuilt - euc).max_norm() < 1e-10


# ------------------------------------------------------ normals and shapes

def test_normal_from_frame_orthogonality():
    e = cat.get_entry("iso_I_a")
    val, du, dv = ca.first_jet(e.surface, (0.1, -0.3))
    nu = ca.normal_from_frame(val, du, dv)
    gm = lambda a, b: al.minkowski_inner(a.reshape(2, 2), b.reshape(2, 2))
    assert abs(gm(nu, val)) < 1e-9
    assert abs(gm(nu, du)) < 1e-9
    assert abs(gm(nu, dv)) < 1e-9
    assert gm(nu, nu) == pytest.approx(1.0, abs=1e-12)


def test_normal_from_frame_degenerate_rejected():
    # frame spanning a degenerate plane: normal direction not spacelike
    val = np.array([1.0, 0.0, 0.0, 1.0])
    du = np.array([0.0, 1.0, 0.0, 0.0])
    dv = np.array([1.0, 0.0, 0.0, -1.0])
    with pytest.raises(DegenerateInducedMetric):
        ca.normal_from_frame(val, du, dv)


def test_classify_operator_literals():
    gram = np.diag([-1.0, 1.0])
    assert ca.classify_operator(np.diag([2.0, 0.5]), np.eye(2)) == "I"
    # nilpotent-shifted operator over a Lorentzian gram: type II
    assert ca.classify_operator(
        np.array([[1.0, 1.0], [-1.0, -1.0]]), gram) == "II"
    # plain Jordan block is self-adjoint for the null-basis gram
    null_gram = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert ca.classify_operator(
        np.array([[1.0, 0.0], [1.0, 1.0]]), null_gram) == "II"
    # rotation-like block: complex pair, type IV
    assert ca.classify_operator(
        np.array([[0.3, -0.8], [0.8, 0.3]]), gram) == "IV"
    # repeated eigenvalue but diagonalizable stays type I
    assert ca.classify_operator(np.eye(2), gram) == "I"


def test_classify_operator_rejects_non_self_adjoint():
    gram = np.diag([-1.0, 1.0])
    w = np.array([[0.0, 1.0], [1.0, 0.0]])  # symmetric but not g-self-adjoint
    with pytest.raises(NotSelfAdjoint):
        ca.classify_operator(w, gram)


def test_shape_operator_iso_I_eigenvalues():
    lam = 1.0 / al.SQRT3
    e = cat.get_entry("iso_I_a", lam=lam)
    sd = ca.shape_operator(e.surface, (0.0, 0.0))
    assert sd.type_label == "I"
    ev = sorted(abs(v.real) for v in sd.eigenvalues)
    assert ev[0] == pytest.approx(lam, abs=1e-6)
    assert ev[1] == pytest.approx(1.0 / lam, abs=1e-6)


def test_shape_operator_iso_IV_complex_pair():
    alpha = 0.25
    e = cat.get_entry("iso_IV", alpha=alpha)
    sd = ca.shape_operator(e.surface, (0.0, 0.0))
    assert sd.type_label == "IV"
    re = [v.real for v in sd.eigenvalues]
    assert abs(re[0]) == pytest.approx(math.tanh(2 * alpha), abs=1e-6)


def test_mean_curvature_sq_values():
    e1 = cat.get_entry("iso_II_a")
    assert ca.mean_curvature_sq(e1.surface, (0.1, 0.1)) == pytest.approx(
        1.0, abs=1e-6)
    lam = 2.0
    e2 = cat.get_entry("iso_I_b", lam=lam)
    expect = (1 + lam * lam) ** 2 / (4 * lam * lam)
    assert ca.mean_curvature_sq(e2.surface, (0.0, 0.0)) == pytest.approx(
        expect, abs=1e-5)
    # minimal boundary case of the hyperbolic family
    e3 = cat.get_entry("iso_IV", alpha=1e-9)
    assert ca.mean_curvature_sq(e3.surface, (0.0, 0.0)) == pytest.approx(
        0.0, abs=1e-6)


# ------------------------------------------------------------- commutator

def test_curvature_commutator_small_on_curved_entry():
    e = cat.get_entry("II_IIa")
    res = ca.curvature_commutator(e.surface, (0.1, 0.2))
    assert res <= 1e-4


def test_curvature_commutator_shrinks_with_step():
    e = cat.get_entry("II_IIa")
    r1 = ca.curvature_commutator(e.surface, (0.15, -0.1), h_outer=1e-2)
    r2 = ca.curvature_commutator(e.surface, (0.15, -0.1), h_outer=5e-3)
    assert r1 / r2 >= 1.5


def test_curvature_commutator_rejects_factor_surface():
    e = cat.get_entry("iso_I_a")
    with pytest.raises(ValueError):
        ca.curvature_commutator(e.surface, (0.0, 0.0))
