"""Finite-difference calculus along parametrized surfaces: 2-jets, the flat
ambient derivative, the chained connection conversions down to the canonical
metric connection, unit normals, shape operators, and the canonical-form
classification of self-adjoint operators on a Lorentzian plane.
"""
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as al
from . import manifold as mf
from .errors import (DegenerateInducedMetric, NotSelfAdjoint, OutOfDomain)

DEFAULT_H = 1e-5
FIELD_H = 1e-4
FD_TOL = 1e-6
TANGENT_TOL = 100.0 * FD_TOL
CURV_H_OUTER = 1e-2


@dataclass(frozen=True)
class SurfaceMap:
    """A parametrized map of a rectangle into one factor (flat 4-vectors)
    or into the product (flat 8-vectors), in matrix-entry coordinates."""
    name: str
    target: str                      # "factor" | "product"
    domain: tuple                    # ((x0, x1), (y0, y1))
    fn: Callable

    def __call__(self, x, y):
        return self.fn(x, y)

    def require_inside(self, x, y, margin=0.0):
        (x0, x1), (y0, y1) = self.domain
        if (x < x0 + margin - 1e-15 or x > x1 - margin + 1e-15
                or y < y0 + margin - 1e-15 or y > y1 - margin + 1e-15):
            raise OutOfDomain(
                f"({x}, {y}) with margin {margin} leaves {self.domain}")

    def grid(self, nx, ny, inset=0.0):
        (x0, x1), (y0, y1) = self.domain
        xs = np.linspace(x0 + inset, x1 - inset, nx)
        ys = np.linspace(y0 + inset, y1 - inset, ny)
        return [(float(x), float(y)) for x in xs for y in ys]


@dataclass(frozen=True)
class Jet2:
    point: np.ndarray
    fx: np.ndarray
    fy: np.ndarray
    fxx: np.ndarray
    fxy: np.ndarray
    fyy: np.ndarray


def first_jet(s, at, h=DEFAULT_H):
    """Point and first derivatives by central differences."""
    x, y = at
    s.require_inside(x, y, margin=h)
    p = np.asarray(s.fn(x, y), dtype=float)
    fxp = s.fn(x + h, y)
    fxm = s.fn(x - h, y)
    fyp = s.fn(x, y + h)
    fym = s.fn(x, y - h)
    return p, (fxp - fxm) / (2 * h), (fyp - fym) / (2 * h)


def jet(s, at, h=DEFAULT_H):
    """Full 2-jet; the mixed derivative uses the four corner points."""
    x, y = at
    s.require_inside(x, y, margin=h)
    p = np.asarray(s.fn(x, y), dtype=float)
    fxp = s.fn(x + h, y)
    fxm = s.fn(x - h, y)
    fyp = s.fn(x, y + h)
    fym = s.fn(x, y - h)
    fpp = s.fn(x + h, y + h)
    fpm = s.fn(x + h, y - h)
    fmp = s.fn(x - h, y + h)
    fmm = s.fn(x - h, y - h)
    h2 = h * h
    return Jet2(point=p,
                fx=(fxp - fxm) / (2 * h),
                fy=(fyp - fym) / (2 * h),
                fxx=(fxp - 2 * p + fxm) / h2,
                fyy=(fyp - 2 * p + fym) / h2,
                fxy=(fpp - fpm - fmp + fmm) / (4 * h2))


def frame_at(s, at, h=DEFAULT_H, tol=FD_TOL):
    """Base point and the two coordinate tangent vectors of a product map."""
    p8, fx, fy = first_jet(s, at, h)
    base = mf.vec8_to_point(p8)
    t1 = mf.from_ambient(fx, base, tol=tol)
    t2 = mf.from_ambient(fy, base, tol=tol)
    return base, t1, t2


def _coeffs_at(c, x, y):
    if callable(c):
        return c(x, y)
    return c


# -------------------------------------------------------------- connections

def sl2_connection(s, v, w, at, h=DEFAULT_H, h_field=FIELD_H):
    """Metric connection of one factor applied to coefficient fields v, w
    over the coordinate frame.  Returns a flat 4-vector."""
    if s.target != "factor":
        raise ValueError("sl2_connection expects a factor surface")
    x, y = at

    def w_ambient(u, t):
        p, fx, fy = first_jet(s, (u, t), h)
        c1, c2 = _coeffs_at(w, u, t)
        return c1 * fx + c2 * fy

    s.require_inside(x, y, margin=h_field + h)
    dx = (w_ambient(x + h_field, y) - w_ambient(x - h_field, y)) / (2 * h_field)
    dy = (w_ambient(x, y + h_field) - w_ambient(x, y - h_field)) / (2 * h_field)
    v1, v2 = _coeffs_at(v, x, y)
    dw = v1 * dx + v2 * dy

    p, fx, fy = first_jet(s, at, h)
    c1, c2 = _coeffs_at(w, x, y)
    wv = c1 * fx + c2 * fy
    vv = v1 * fx + v2 * fy
    ip = al.minkowski_inner(vv.reshape(2, 2), wv.reshape(2, 2))
    return dw - ip * p


def _connection_chain(base8, v8, w8, dw8, tol=TANGENT_TOL):
    """From the flat derivative dw8 of an ambient tangent field along v8,
    produce the product-metric connection and the canonical correction."""
    base = mf.vec8_to_point(base8)
    ip = mf.pair_inner8(v8, w8)
    ipq = mf.pair_inner8(v8, mf.q_flip8(w8))
    a4, b4 = base8[:4], base8[4:]
    ea = dw8[:4] - 0.5 * ip * a4 - 0.5 * ipq * (-a4)
    eb = dw8[4:] - 0.5 * ip * b4 - 0.5 * ipq * b4
    euc = mf.from_ambient(np.concatenate([ea, eb]), base, tol=tol)
    vv = mf.from_ambient(v8, base, tol=tol)
    ww = mf.from_ambient(w8, base, tol=tol)
    corr = (mf.apply_J(mf.tensor_G(vv, mf.apply_P(ww)))
            + mf.apply_J(mf.tensor_G(ww, mf.apply_P(vv))))
    return euc, euc - 0.5 * corr


def _field_derivative(s, field, v_at, at, h_field):
    x, y = at
    s.require_inside(x, y, margin=h_field)
    v1, v2 = v_at
    dx = (np.asarray(field(x + h_field, y), dtype=float)
          - np.asarray(field(x - h_field, y), dtype=float)) / (2 * h_field)
    dy = (np.asarray(field(x, y + h_field), dtype=float)
          - np.asarray(field(x, y - h_field), dtype=float)) / (2 * h_field)
    return v1 * dx + v2 * dy


def nk_connection_field(s, v, field, at, h=DEFAULT_H, h_field=FIELD_H):
    """Canonical-metric covariant derivative of an arbitrary manifold-tangent
    ambient field along the surface direction with coordinate coefficients v.

    field(x, y) must return a flat 8-vector tangent to the manifold at
    s(x, y); it need not be tangent to the surface.
    """
    if s.target != "product":
        raise ValueError("nk_connection_field expects a product surface")
    x, y = at
    v_at = _coeffs_at(v, x, y)
    dw8 = _field_derivative(s, field, v_at, at, h_field)
    p8, fx, fy = first_jet(s, at, h)
    v8 = v_at[0] * fx + v_at[1] * fy
    w8 = np.asarray(field(x, y), dtype=float)
    _, nk = _connection_chain(p8, v8, w8, dw8)
    return nk


def product_connection(s, v, w, at, h=DEFAULT_H, h_field=FIELD_H):
    """Levi-Civita connection of the product metric on coefficient fields."""
    field = coefficient_field(s, w, h)
    x, y = at
    v_at = _coeffs_at(v, x, y)
    dw8 = _field_derivative(s, field, v_at, at, h_field)
    p8, fx, fy = first_jet(s, at, h)
    v8 = v_at[0] * fx + v_at[1] * fy
    w8 = np.asarray(field(x, y), dtype=float)
    euc, _ = _connection_chain(p8, v8, w8, dw8)
    return euc


def nk_connection(s, v, w, at, h=DEFAULT_H, h_field=FIELD_H):
    """Canonical-metric connection on coefficient fields over the coordinate
    frame of a product surface.  Returns an NKVector at the base point."""
    field = coefficient_field(s, w, h)
    return nk_connection_field(s, v, field, at, h=h, h_field=h_field)


def coefficient_field(s, coeffs, h=DEFAULT_H):
    """Ambient field c1 * F_x + c2 * F_y, with the jets cleaned through the
    Lie-algebra projection so the field stays exactly tangent."""

    def field(x, y):
        base, t1, t2 = frame_at(s, (x, y), h)
        c1, c2 = _coeffs_at(coeffs, x, y)
        return mf.to_ambient(c1 * t1 + c2 * t2)

    return field


def coordinate_patch(zx, zy, extent=1.0, name="patch"):
    """Product surface through the base of zx with coordinate vector fields
    equal to zx, zy at the origin; used to differentiate ambient tensors."""
    base = zx.base
    a, b = base.a, base.b
    ax, bx, ay, by = zx.alpha, zx.beta, zy.alpha, zy.beta

    def fn(u, t):
        return np.concatenate([
            (a @ al.expm_traceless(u * ax + t * ay)).reshape(4),
            (b @ al.expm_traceless(u * bx + t * by)).reshape(4)])

    return SurfaceMap(name, "product", ((-extent, extent), (-extent, extent)),
                      fn)


def nabla_P_fd(zx, zy, h=DEFAULT_H, h_field=FIELD_H):
    """Finite-difference covariant derivative of P at a point, evaluated on
    the pair (zx, zy) via an auxiliary coordinate patch."""
    s = coordinate_patch(zx, zy)

    def p_of_dy(u, t):
        base, _, t2 = frame_at(s, (u, t), h)
        return mf.to_ambient(mf.apply_P(t2))

    lead = nk_connection_field(s, (1.0, 0.0), p_of_dy, (0.0, 0.0),
                               h=h, h_field=h_field)
    trail = mf.apply_P(nk_connection(s, (1.0, 0.0), (0.0, 1.0), (0.0, 0.0),
                                     h=h, h_field=h_field))
    return lead - trail


# ------------------------------------------------------- normals and shapes

def induced_gram(fx, fy):
    m1, m2 = fx.reshape(2, 2), fy.reshape(2, 2)
    return np.array([[al.minkowski_inner(m1, m1), al.minkowski_inner(m1, m2)],
                     [al.minkowski_inner(m2, m1), al.minkowski_inner(m2, m2)]])


def normal_from_frame(val4, du4, dv4, reference=None):
    """Unit spacelike vector orthogonal to the position and both tangents.

    The sign is fixed by the reference vector when given, otherwise by
    making the first coordinate of magnitude above 1e-9 positive.
    """
    rows = np.stack([np.asarray(val4, dtype=float).reshape(4),
                     np.asarray(du4, dtype=float).reshape(4),
                     np.asarray(dv4, dtype=float).reshape(4)])
    _, _, vt = np.linalg.svd(rows @ al.MINK_GRAM)
    n = vt[-1]
    nn = float(n @ al.MINK_GRAM @ n)
    if nn <= 1e-14:
        raise DegenerateInducedMetric("normal direction is not spacelike")
    n = n / np.sqrt(nn)
    if reference is not None:
        if float(n @ np.asarray(reference).reshape(4)) < 0:
            n = -n
        return n
    for c in n:
        if abs(c) > 1e-9:
            if c < 0:
                n = -n
            break
    return n


def _lorentzian_gate(gram):
    tol = 1e-7 * (1.0 + np.abs(gram).max()) ** 2
    d = float(np.linalg.det(gram))
    if d > -tol:
        raise DegenerateInducedMetric(
            f"induced metric determinant {d:.3e} is not negative")
    return d


def unit_normal(s, at, h=DEFAULT_H, reference=None):
    """Unit spacelike normal of a factor surface at a Lorentzian point."""
    if s.target != "factor":
        raise ValueError("unit_normal expects a factor surface")
    p, fx, fy = first_jet(s, at, h)
    _lorentzian_gate(induced_gram(fx, fy))
    return normal_from_frame(p, fx, fy, reference=reference)


@dataclass(frozen=True)
class ShapeData:
    weingarten: np.ndarray
    gram: np.ndarray
    eigenvalues: tuple
    type_label: str
    normal: np.ndarray


def classify_operator(w, gram, tol=None, sa_tol=None):
    """Canonical-form label of a gram-self-adjoint operator on a Lorentzian
    plane: I diagonalizable over R, II a real Jordan block, IV a complex
    pair."""
    w = np.asarray(w, dtype=float)
    tr = float(w[0, 0] + w[1, 1])
    det = float(w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0])
    if tol is None:
        tol = 1e-6 * (1.0 + abs(tr) + abs(det))
    if sa_tol is None:
        sa_tol = tol
    sym = gram @ w
    sa_res = float(np.abs(sym - sym.T).max())
    if sa_res > sa_tol:
        raise NotSelfAdjoint(f"self-adjointness residual {sa_res:.3e}")
    disc = tr * tr - 4.0 * det
    if disc > tol:
        return "I"
    if disc < -tol:
        return "IV"
    if np.abs(w - 0.5 * tr * np.eye(2)).max() > tol:
        return "II"
    return "I"


def _eigen_pair(w, label):
    tr = float(w[0, 0] + w[1, 1])
    det = float(w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0])
    disc = tr * tr - 4.0 * det
    if label == "II":
        return (complex(tr / 2.0), complex(tr / 2.0))
    if label == "IV":
        root = np.sqrt(max(-disc, 0.0))
        return (complex(tr / 2.0, -root / 2.0), complex(tr / 2.0, root / 2.0))
    root = np.sqrt(max(disc, 0.0))
    return (complex((tr - root) / 2.0), complex((tr + root) / 2.0))


def shape_operator(s, at, h=FIELD_H, h_inner=DEFAULT_H, reference=None,
                   sa_tol=None):
    """Weingarten operator in the coordinate frame of a factor surface.

    The normal field over the stencil is sign-aligned to the center normal
    before differencing.
    """
    if s.target != "factor":
        raise ValueError("shape_operator expects a factor surface")
    x, y = at
    s.require_inside(x, y, margin=h + h_inner)
    p, fx, fy = first_jet(s, at, h_inner)
    gram = induced_gram(fx, fy)
    _lorentzian_gate(gram)
    nu = normal_from_frame(p, fx, fy, reference=reference)
    nxp = unit_normal(s, (x + h, y), h_inner, reference=nu)
    nxm = unit_normal(s, (x - h, y), h_inner, reference=nu)
    nyp = unit_normal(s, (x, y + h), h_inner, reference=nu)
    nym = unit_normal(s, (x, y - h), h_inner, reference=nu)
    dnx = (nxp - nxm) / (2 * h)
    dny = (nyp - nym) / (2 * h)
    cols = []
    for dn in (dnx, dny):
        dm = dn.reshape(2, 2)
        rhs = np.array([al.minkowski_inner(dm, fx.reshape(2, 2)),
                        al.minkowski_inner(dm, fy.reshape(2, 2))])
        cols.append(-np.linalg.solve(gram, rhs))
    w = np.stack(cols, axis=1)
    label = classify_operator(w, gram, sa_tol=sa_tol if sa_tol is not None
                              else 1e-4)
    return ShapeData(weingarten=w, gram=gram,
                     eigenvalues=_eigen_pair(w, label),
                     type_label=label, normal=nu)


def mean_curvature_sq(s, at, h=FIELD_H, h_inner=DEFAULT_H, reference=None):
    """Squared length of the mean curvature vector of a factor surface."""
    sd = shape_operator(s, at, h=h, h_inner=h_inner, reference=reference)
    tr = float(sd.weingarten[0, 0] + sd.weingarten[1, 1])
    return (0.5 * tr) ** 2


# ------------------------------------------------------ curvature validation

def curvature_commutator(s, at, h=FIELD_H, h_outer=CURV_H_OUTER):
    """Max-norm residual between the nested finite-difference commutator of
    the canonical connection on coordinate fields and the closed-form
    curvature tensor."""
    if s.target != "product":
        raise ValueError("curvature_commutator expects a product surface")
    ex, ey = (1.0, 0.0), (0.0, 1.0)
    base, t1, t2 = frame_at(s, at, DEFAULT_H)
    worst = 0.0
    for wz, zvec in ((ex, t1), (ey, t2)):
        def inner(vc):
            def fld(u, t):
                return mf.to_ambient(
                    nk_connection(s, vc, wz, (u, t), h=DEFAULT_H, h_field=h))
            return fld

        t_yx = nk_connection_field(s, ex, inner(ey), at,
                                   h=DEFAULT_H, h_field=h_outer)
        t_xy = nk_connection_field(s, ey, inner(ex), at,
                                   h=DEFAULT_H, h_field=h_outer)
        lhs = t_yx - t_xy
        rhs = mf.curvature_R(t1, t2, zvec)
        worst = max(worst, (lhs - rhs).max_norm())
    return worst
