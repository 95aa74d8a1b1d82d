"""The product of two copies of the unit-determinant group, carrying the
product metric, the almost complex structure J, the almost product
structures P and Q, the canonical skew tensor G, its covariant derivative,
and the closed-form curvature tensor.

Tangent vectors are stored as pairs of traceless matrices (alpha, beta)
attached to a base point (A, B); the ambient representative is
(A @ alpha, B @ beta).
"""
from dataclasses import dataclass, field

import numpy as np

from . import algebra as al
from .errors import BaseMismatch, InvalidGroupElement, NotOnHyperquadric, NotTangent

SQRT3 = al.SQRT3


@dataclass(frozen=True)
class NKPoint:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        for m in (self.a, self.b):
            if abs(al.det2(m) - 1.0) > al.TOL_POINT:
                raise InvalidGroupElement(
                    f"factor determinant {al.det2(m)!r} is not 1")

    def close_to(self, other, tol=al.TOL_POINT):
        return (np.abs(self.a - other.a).max() <= tol
                and np.abs(self.b - other.b).max() <= tol)


def _require_same_base(z, w):
    if z.base is not w.base and not z.base.close_to(w.base):
        raise BaseMismatch("tangent vectors live at different base points")


@dataclass(frozen=True)
class NKVector:
    base: NKPoint
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        for m in (self.alpha, self.beta):
            if abs(m[0, 0] + m[1, 1]) > al.TOL_POINT * (1.0 + np.abs(m).max()):
                raise NotTangent("Lie-algebra component is not traceless")

    def __add__(self, other):
        _require_same_base(self, other)
        return NKVector(self.base, self.alpha + other.alpha,
                        self.beta + other.beta)

    def __sub__(self, other):
        _require_same_base(self, other)
        return NKVector(self.base, self.alpha - other.alpha,
                        self.beta - other.beta)

    def __mul__(self, c):
        return NKVector(self.base, c * self.alpha, c * self.beta)

    __rmul__ = __mul__

    def __neg__(self):
        return NKVector(self.base, -self.alpha, -self.beta)

    def max_norm(self):
        return max(np.abs(self.alpha).max(), np.abs(self.beta).max())


ORIGIN = NKPoint(al.ID2.copy(), al.ID2.copy())


# ------------------------------------------------------------------ tensors

def product_inner(z, w):
    """Sum of the factor inner products; left invariance reduces each factor
    to the Lie-algebra pair."""
    _require_same_base(z, w)
    return (al.minkowski_inner(z.alpha, w.alpha)
            + al.minkowski_inner(z.beta, w.beta))


def apply_J(z):
    return NKVector(z.base, (z.alpha - 2.0 * z.beta) / SQRT3,
                    (2.0 * z.alpha - z.beta) / SQRT3)


def apply_P(z):
    return NKVector(z.base, z.beta, z.alpha)


def apply_Q(z):
    return NKVector(z.base, -z.alpha, z.beta)


def nk_metric(z, w):
    """Canonical metric: a constant mix of the product metric with its
    P-twisted companion."""
    _require_same_base(z, w)
    return (2.0 / 3.0) * product_inner(z, w) \
        - (1.0 / 3.0) * product_inner(apply_P(z), w)


def nk_metric_via_J(z, w):
    """Same metric written as an average over J; kept as a cross-check."""
    return 0.25 * (product_inner(z, w) + product_inner(apply_J(z), apply_J(w)))


def tensor_G(x, y):
    """The skew tensor measuring the failure of J to be parallel."""
    _require_same_base(x, y)
    a, b = x.alpha, x.beta
    c, d = y.alpha, y.beta
    k = 2.0 / (3.0 * SQRT3)
    return NKVector(
        x.base,
        k * (-al.cross(a, c) - al.cross(a, d) + al.cross(c, b)
             + 2.0 * al.cross(b, d)),
        k * (-2.0 * al.cross(a, c) + al.cross(a, d) - al.cross(c, b)
             + al.cross(b, d)))


def nabla_G(w, x, y):
    """Covariant derivative of tensor_G in closed form."""
    _require_same_base(w, x)
    _require_same_base(w, y)
    jx, jy = apply_J(x), apply_J(y)
    out = nk_metric(w, y) * jx - nk_metric(w, x) * jy - nk_metric(jx, y) * w
    return (-2.0 / 3.0) * out


def nabla_P(x, y):
    """Covariant derivative of P, in the closed form implied by the relation
    G(X, PY) + P G(X, Y) = -2 J (nabla_X P) Y."""
    s = tensor_G(x, apply_P(y)) + apply_P(tensor_G(x, y))
    return 0.5 * apply_J(s)


def curvature_R(x, y, z):
    """Curvature endomorphism R(x, y) z in closed form: a constant-curvature
    block, a J block, and a P block."""
    _require_same_base(x, y)
    _require_same_base(x, z)
    jx, jy, jz = apply_J(x), apply_J(y), apply_J(z)
    px, py = apply_P(x), apply_P(y)
    jpx, jpy = apply_J(px), apply_J(py)
    t1 = nk_metric(y, z) * x - nk_metric(x, z) * y
    t2 = nk_metric(jy, z) * jx - nk_metric(jx, z) * jy \
        - 2.0 * nk_metric(jx, y) * jz
    t3 = nk_metric(py, z) * px - nk_metric(px, z) * py \
        + nk_metric(jpy, z) * jpx - nk_metric(jpx, z) * jpy
    return (-5.0 / 6.0) * t1 + (-1.0 / 6.0) * t2 + (-2.0 / 3.0) * t3


def curvature_R4(x, y, z, w):
    """Curvature as a 4-tensor: the metric paired with curvature_R."""
    return nk_metric(curvature_R(x, y, z), w)


# ------------------------------------------------------- ambient conversion

def to_ambient(z):
    """Flat 8-vector of the ambient representative (A alpha, B beta)."""
    return np.concatenate([(z.base.a @ z.alpha).reshape(4),
                           (z.base.b @ z.beta).reshape(4)])


def from_ambient(w8, base, tol=al.TOL_POINT):
    """Inverse of to_ambient.  Raises NotTangent when the trace residual of
    either Lie-algebra component exceeds tol (relative)."""
    w8 = np.asarray(w8, dtype=float)
    ua = al.adjugate(base.a) @ w8[:4].reshape(2, 2)
    ub = al.adjugate(base.b) @ w8[4:].reshape(2, 2)
    scale = 1.0 + max(np.abs(ua).max(), np.abs(ub).max())
    res = max(abs(ua[0, 0] + ua[1, 1]), abs(ub[0, 0] + ub[1, 1]))
    if res > tol * scale:
        raise NotTangent(f"trace residual {res:.3e} exceeds {tol:.1e}")
    return NKVector(base, al.traceless_part(ua), al.traceless_part(ub))


def point_to_vec8(p):
    return np.concatenate([p.a.reshape(4), p.b.reshape(4)])


def vec8_to_point(x8):
    x8 = np.asarray(x8, dtype=float)
    return NKPoint(x8[:4].reshape(2, 2), x8[4:].reshape(2, 2))


def pair_inner8(u8, v8):
    """Product inner product on flat ambient 8-vectors."""
    return (al.minkowski_inner(u8[:4].reshape(2, 2), v8[:4].reshape(2, 2))
            + al.minkowski_inner(u8[4:].reshape(2, 2), v8[4:].reshape(2, 2)))


def q_flip8(w8):
    """Ambient action of Q: negate the first factor."""
    return np.concatenate([-w8[:4], w8[4:]])


# --------------------------------------------------------------- isometries

def isometry_swap(p, z=None):
    """Exchange the two factors.  Anti-commutes with J, commutes with P."""
    q = NKPoint(p.b, p.a)
    if z is None:
        return q, None
    return q, NKVector(q, z.beta, z.alpha)


def isometry_translate(a, b, c, p, z=None):
    """Left translate each factor and right translate both by the same
    element.  Commutes with J and P."""
    for m in (a, b, c):
        al.require_group_element(m)
    q = NKPoint(a @ p.a @ c, b @ p.b @ c)
    if z is None:
        return q, None
    cinv = al.adjugate(c)
    return q, NKVector(q, cinv @ z.alpha @ c, cinv @ z.beta @ c)


def isometry(kind, p, z=None, a=None, b=None, c=None):
    """Dispatch to the factor swap or the three-element translation."""
    if kind == "swap":
        return isometry_swap(p, z)
    if kind == "translate":
        return isometry_translate(a, b, c, p, z)
    raise ValueError(f"unknown isometry kind {kind!r}")


def ambient_convert(z, direction, base=None):
    """Round-trip between NKVector and its flat ambient 8-vector."""
    if direction == "to_ambient":
        return to_ambient(z)
    if direction == "from_ambient":
        if base is None:
            raise ValueError("from_ambient needs a base point")
        return from_ambient(z, base)
    raise ValueError(f"unknown direction {direction!r}")


# ------------------------------------------------------------------- charts

def h31_chart(x, chart="f1"):
    """Linear isometry from a quadric in R^4 onto the unit-determinant group.

    chart f1 takes the (-,-,+,+) unit quadric; chart f2 takes the quadric of
    the star product.  Raises NotOnHyperquadric off the quadric.
    """
    x = np.asarray(x, dtype=float)
    if chart == "f1":
        q = -x[0] ** 2 - x[1] ** 2 + x[2] ** 2 + x[3] ** 2
    elif chart == "f2":
        q = al.star_inner(x, x)
    else:
        raise ValueError(f"unknown chart {chart!r}")
    if abs(q + 1.0) > al.TOL_POINT * (1.0 + float(x @ x)):
        raise NotOnHyperquadric(f"quadric value {q!r} is not -1")
    return h31_differential(x, chart)


def h31_differential(x, chart="f1"):
    """The same linear map without the quadric membership test; valid for
    tangent vectors and arbitrary 4-vectors."""
    x = np.asarray(x, dtype=float)
    if chart == "f1":
        return np.array([[x[0] - x[2], x[3] - x[1]],
                         [x[3] + x[1], x[0] + x[2]]])
    if chart == "f2":
        return np.array([[x[0], x[1]], [x[2], -x[3]]])
    raise ValueError(f"unknown chart {chart!r}")
