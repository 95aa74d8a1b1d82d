import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import nksl2r.algebra as al
import nksl2r.manifold as mf
from nksl2r.errors import (BaseMismatch, InvalidGroupElement, NotOnHyperquadric,
                           NotTangent)


coeff = st.floats(min_value=-2.0, max_value=2.0,
                  allow_nan=False, allow_infinity=False)

S3 = al.SQRT3


def vec(alpha, beta, base=mf.ORIGIN):
    return mf.NKVector(base, np.asarray(alpha, float),
                       np.asarray(beta, float))


def rand_vec(rng, base=mf.ORIGIN):
    return mf.NKVector(base,
                       al.traceless_part(rng.uniform(-1, 1, (2, 2))),
                       al.traceless_part(rng.uniform(-1, 1, (2, 2))))


def vec_from_coeffs(c, base=mf.ORIGIN):
    alpha = c[0] * al.SQ_I + c[1] * al.SQ_J + c[2] * al.SQ_K
    beta = c[3] * al.SQ_I + c[4] * al.SQ_J + c[5] * al.SQ_K
    return mf.NKVector(base, alpha, beta)


# ------------------------------------------------------------ product metric

def test_product_inner_split_units():
    assert mf.product_inner(vec(al.SQ_I, 0 * al.SQ_I),
                            vec(al.SQ_I, 0 * al.SQ_I)) == pytest.approx(1.0)
    z = vec(al.SQ_K, al.SQ_K)
    assert mf.product_inner(z, z) == pytest.approx(-2.0)
    assert mf.product_inner(vec(al.SQ_I, al.SQ_J),
                            vec(al.SQ_J, al.SQ_I)) == pytest.approx(0.0)


def test_product_inner_base_mismatch():
    other = mf.NKPoint(al.expm_traceless(0.3 * al.SQ_K), al.ID2)
    with pytest.raises(BaseMismatch):
        mf.product_inner(vec(al.SQ_I, al.SQ_I),
                         vec(al.SQ_I, al.SQ_I, base=other))


# ----------------------------------------------------------- J, P, Q algebra

def test_apply_J_on_first_slot():
    out = mf.apply_J(vec(al.SQ_I, 0 * al.SQ_I))
    assert np.allclose(out.alpha, al.SQ_I / S3)
    assert np.allclose(out.beta, 2 * al.SQ_I / S3)


def test_apply_J_on_diagonal():
    out = mf.apply_J(vec(al.SQ_I, al.SQ_I))
    assert np.allclose(out.alpha, -al.SQ_I / S3)
    assert np.allclose(out.beta, al.SQ_I / S3)


def test_apply_P_swaps_slots():
    out = mf.apply_P(vec(al.SQ_I, al.SQ_J))
    assert np.allclose(out.alpha, al.SQ_J)
    assert np.allclose(out.beta, al.SQ_I)


def test_apply_Q_flips_first_slot():
    out = mf.apply_Q(vec(al.SQ_I, al.SQ_J))
    assert np.allclose(out.alpha, -al.SQ_I)
    assert np.allclose(out.beta, al.SQ_J)


@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_J_squared_is_minus_identity(a, b, c, d, e, f):
    z = vec_from_coeffs((a, b, c, d, e, f))
    assert (mf.apply_J(mf.apply_J(z)) + z).max_norm() < 1e-12


@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_P_involutive_and_anticommutes_with_J(a, b, c, d, e, f):
    z = vec_from_coeffs((a, b, c, d, e, f))
    assert (mf.apply_P(mf.apply_P(z)) - z).max_norm() < 1e-12
    assert (mf.apply_P(mf.apply_J(z))
            + mf.apply_J(mf.apply_P(z))).max_norm() < 1e-12


@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_Q_from_P_and_J(a, b, c, d, e, f):
    """Q = -(1/sqrt3)(2 P J - J)."""
    z = vec_from_coeffs((a, b, c, d, e, f))
    jz = mf.apply_J(z)
    rebuilt = (-1.0 / S3) * (2.0 * mf.apply_P(jz) - jz)
    assert (mf.apply_Q(z) - rebuilt).max_norm() < 1e-12


@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_P_from_Q_after_J(a, b, c, d, e, f):
    # composition order matters: Q applied to J z
    z = vec_from_coeffs((a, b, c, d, e, f))
    rebuilt = 0.5 * (z + S3 * mf.apply_Q(mf.apply_J(z)))
    assert (mf.apply_P(z) - rebuilt).max_norm() < 1e-12


# --------------------------------------------------------------------- metric

def test_nk_metric_values():
    z = vec(al.SQ_I, 0 * al.SQ_I)
    assert mf.nk_metric(z, z) == pytest.approx(2.0 / 3.0)
    w = vec(al.SQ_I, al.SQ_I)
    assert mf.nk_metric(w, w) == pytest.approx(2.0 / 3.0)


@given(coeff, coeff, coeff, coeff, coeff, coeff,
       coeff, coeff, coeff, coeff, coeff, coeff)
def test_metric_forms_agree(a, b, c, d, e, f, g, h, i, j, k, l):
    z = vec_from_coeffs((a, b, c, d, e, f))
    w = vec_from_coeffs((g, h, i, j, k, l))
    assert mf.nk_metric(z, w) == pytest.approx(
        mf.nk_metric_via_J(z, w), abs=1e-10)


@given(coeff, coeff, coeff, coeff, coeff, coeff,
       coeff, coeff, coeff, coeff, coeff, coeff)
def test_product_metric_recovered_from_g(a, b, c, d, e, f, g, h, i, j, k, l):
    """<z,w> = 2 g(z,w) + g(z,Pw)."""
    z = vec_from_coeffs((a, b, c, d, e, f))
    w = vec_from_coeffs((g, h, i, j, k, l))
    lhs = mf.product_inner(z, w)
    rhs = 2.0 * mf.nk_metric(z, w) + mf.nk_metric(z, mf.apply_P(w))
    assert lhs == pytest.approx(rhs, abs=1e-10)


@given(coeff, coeff, coeff, coeff, coeff, coeff,
       coeff, coeff, coeff, coeff, coeff, coeff)
def test_metric_J_P_invariance(a, b, c, d, e, f, g, h, i, j, k, l):
    z = vec_from_coeffs((a, b, c, d, e, f))
    w = vec_from_coeffs((g, h, i, j, k, l))
    gzw = mf.nk_metric(z, w)
    assert mf.nk_metric(mf.apply_J(z), mf.apply_J(w)) == pytest.approx(
        gzw, abs=1e-10)
    assert mf.nk_metric(mf.apply_P(z), mf.apply_P(w)) == pytest.approx(
        gzw, abs=1e-10)
    assert mf.nk_metric(mf.apply_P(z), w) == pytest.approx(
        mf.nk_metric(z, mf.apply_P(w)), abs=1e-10)


# ------------------------------------------------------------------- tensor G

def test_tensor_G_split_unit_example():
    out = mf.tensor_G(vec(al.SQ_I, 0 * al.SQ_I), vec(al.SQ_J, 0 * al.SQ_J))
    k = 2.0 / (3.0 * S3)
    assert np.allclose(out.alpha, -k * al.SQ_K)
    assert np.allclose(out.beta, -2.0 * k * al.SQ_K)


@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_tensor_G_antisymmetric_on_diagonal(a, b, c, d, e, f):
    z = vec_from_coeffs((a, b, c, d, e, f))
    assert mf.tensor_G(z, z).max_norm() < 1e-12


def test_tensor_G_metric_skew():
    rng = np.random.default_rng(5)
    for _ in range(30):
        x, y, z = (rand_vec(rng) for _ in range(3))
        lhs = mf.nk_metric(mf.tensor_G(x, y), z)
        rhs = -mf.nk_metric(mf.tensor_G(x, z), y)
        assert lhs == pytest.approx(rhs, abs=1e-11)


def test_nabla_G_vanishes_on_triple_diagonal():
    rng = np.random.default_rng(6)
    for _ in range(10):
        x = rand_vec(rng)
        assert mf.nabla_G(x, x, x).max_norm() < 1e-12


def test_nabla_G_cyclic_identity():
    rng = np.random.default_rng(8)
    for _ in range(20):
        w, x, y, z = (rand_vec(rng) for _ in range(4))
        lhs = 2.0 * mf.nk_metric(mf.nabla_G(w, x, y), z)
        cyc = 0.0
        for (p, q, r) in ((x, y, z), (y, z, x), (z, x, y)):
            cyc += mf.nk_metric(mf.tensor_G(w, p),
                                mf.apply_J(mf.tensor_G(q, r)))
        assert lhs == pytest.approx(cyc, abs=1e-11)


# ------------------------------------------------------------------ curvature

def test_curvature_antisymmetry_and_J_invariance():
    rng = np.random.default_rng(9)
    for _ in range(20):
        x, y, z, w = (rand_vec(rng) for _ in range(4))
        assert mf.curvature_R(x, x, z).max_norm() < 1e-12
        lhs = mf.curvature_R4(x, y, z, w)
        rhs = mf.curvature_R4(mf.apply_J(x), mf.apply_J(y),
                              mf.apply_J(z), mf.apply_J(w))
        assert lhs == pytest.approx(rhs, abs=1e-11)


def test_G_length_from_curvature():
    rng = np.random.default_rng(10)
    for _ in range(20):
        x, y = (rand_vec(rng) for _ in range(2))
        g2 = mf.nk_metric(mf.tensor_G(x, y), mf.tensor_G(x, y))
        jx, jy = mf.apply_J(x), mf.apply_J(y)
        rhs = mf.curvature_R4(x, y, y, x) - mf.curvature_R4(x, y, jy, jx)
        assert g2 == pytest.approx(rhs, abs=1e-11)


# ------------------------------------------------------------------ isometries

def test_swap_example():
    m = al.expm_traceless(0.4 * al.SQ_I)
    p = mf.NKPoint(al.ID2, m)
    q, _ = mf.isometry_swap(p)
    assert np.allclose(q.a, m)
    assert np.allclose(q.b, al.ID2)


def test_translate_neutral_element():
    rng = np.random.default_rng(12)
    p = mf.NKPoint(al.expm_traceless(0.2 * al.SQ_J), al.ID2)
    z = rand_vec(rng, p)
    q, w = mf.isometry_translate(al.ID2, al.ID2, al.ID2, p, z)
    assert np.allclose(q.a, p.a) and np.allclose(q.b, p.b)
    assert (w - z).max_norm() < 1e-12


def test_translate_rejects_non_group_element():
    with pytest.raises(InvalidGroupElement):
        mf.isometry_translate(2.0 * al.ID2, al.ID2, al.ID2, mf.ORIGIN)


def test_isometry_metric_preservation():
    rng = np.random.default_rng(13)
    for _ in range(20):
        p = mf.NKPoint(al.expm_traceless(
            al.traceless_part(rng.uniform(-0.5, 0.5, (2, 2)))),
            al.expm_traceless(
            al.traceless_part(rng.uniform(-0.5, 0.5, (2, 2)))))
        z, w = rand_vec(rng, p), rand_vec(rng, p)
        gzw = mf.nk_metric(z, w)

        _, z1 = mf.isometry_swap(p, z)
        _, w1 = mf.isometry_swap(p, w)
        assert mf.nk_metric(z1, w1) == pytest.approx(gzw, abs=1e-10)

        mats = [al.expm_traceless(
            al.traceless_part(rng.uniform(-0.5, 0.5, (2, 2))))
            for _ in range(3)]
        _, z2 = mf.isometry_translate(*mats, p, z)
        _, w2 = mf.isometry_translate(*mats, p, w)
        assert mf.nk_metric(z2, w2) == pytest.approx(gzw, abs=1e-10)


def test_swap_differential_anticommutes_with_J():
    rng = np.random.default_rng(14)
    p = mf.NKPoint(al.expm_traceless(0.3 * al.SQ_I),
                   al.expm_traceless(-0.2 * al.SQ_K))
    z = rand_vec(rng, p)
    _, jz_pushed = mf.isometry_swap(p, mf.apply_J(z))
    _, z_pushed = mf.isometry_swap(p, z)
    assert (jz_pushed + mf.apply_J(z_pushed)).max_norm() < 1e-12


def test_isometry_dispatcher():
    p = mf.ORIGIN
    q, _ = mf.isometry("swap", p)
    assert np.allclose(q.a, p.b)
    with pytest.raises(ValueError):
        mf.isometry("reflect", p)


# -------------------------------------------------------------------- charts

def test_h31_chart_f1_identity():
    assert np.allclose(mf.h31_chart((1, 0, 0, 0), "f1"), al.ID2)


def test_h31_chart_f2_identity():
    assert np.allclose(mf.h31_chart((1, 0, 0, -1), "f2"), al.ID2)


def test_h31_chart_rejects_off_quadric():
    with pytest.raises(NotOnHyperquadric):
        mf.h31_chart((1, 0, 0, 0), "f2")
    with pytest.raises(NotOnHyperquadric):
        mf.h31_chart((0, 0, 0, 0), "f1")


def test_h31_f1_pushforward_preserves_inner():
    """The differential carries the diagonal (-,-,+,+) form on the chart
    source to the group inner product."""
    rng = np.random.default_rng(15)
    for _ in range(30):
        u = rng.normal(size=4)
        v = rng.normal(size=4)
        du = mf.h31_differential(u, "f1")
        dv = mf.h31_differential(v, "f1")
        lhs = al.minkowski_inner(du, dv)
        rhs = -u[0] * v[0] - u[1] * v[1] + u[2] * v[2] + u[3] * v[3]
        assert lhs == pytest.approx(rhs, abs=1e-10)


def test_h31_f2_pushforward_matches_star_inner():
    rng = np.random.default_rng(16)
    for _ in range(30):
        u = rng.normal(size=4)
        v = rng.normal(size=4)
        du = mf.h31_differential(u, "f2")
        dv = mf.h31_differential(v, "f2")
        assert al.minkowski_inner(du, dv) == pytest.approx(
            al.star_inner(u, v), abs=1e-10)


# ----------------------------------------------------------- ambient carrier

def test_to_ambient_example():
    z = vec(al.SQ_I, 0 * al.SQ_I)
    w8 = mf.to_ambient(z)
    assert np.allclose(w8, [1, 0, 0, -1, 0, 0, 0, 0])


@settings(max_examples=40)
@given(coeff, coeff, coeff, coeff, coeff, coeff)
def test_ambient_roundtrip(a, b, c, d, e, f):
    z = vec_from_coeffs((a, b, c, d, e, f))
    back = mf.from_ambient(mf.to_ambient(z), z.base)
    assert (back - z).max_norm() < 1e-13


def test_from_ambient_rejects_non_tangent():
    with pytest.raises(NotTangent):
        mf.from_ambient(np.array([1, 0, 0, 1, 0, 0, 0, 0], float), mf.ORIGIN)


def test_ambient_convert_dispatcher():
    z = vec(al.SQ_J, al.SQ_K)
    w8 = mf.ambient_convert(z, "to_ambient")
    z2 = mf.ambient_convert(w8, "from_ambient", base=mf.ORIGIN)
    assert (z - z2).max_norm() < 1e-13
    with pytest.raises(ValueError):
        mf.ambient_convert(z, "sideways")
