"""2x2 matrix algebra: the unit-determinant group, its traceless Lie algebra,
and the two indefinite inner products on the space of 2x2 real matrices.

Matrices are plain numpy arrays of shape (2, 2).  The matrix <-> 4-vector
identification is row-major: [[x1, x2], [x3, x4]] <-> (x1, x2, x3, x4).
"""
import numpy as np

from .errors import InvalidGroupElement

TOL_POINT = 1e-9

SQRT3 = float(np.sqrt(3.0))

ID2 = np.eye(2)

# traceless basis: two spacelike directions and one timelike direction
SQ_I = np.array([[1.0, 0.0], [0.0, -1.0]])
SQ_J = np.array([[0.0, 1.0], [1.0, 0.0]])
SQ_K = np.array([[0.0, 1.0], [-1.0, 0.0]])


def adjugate(m):
    """Adjugate of a 2x2 matrix: adjugate(m) @ m = det(m) * Id."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def minkowski_inner(a, b):
    """Signature (2,2) inner product on 2x2 matrices.

    Normalized so that unit-determinant matrices have squared norm -1,
    i.e. minkowski_inner(a, a) == -det(a).
    """
    return -0.5 * (a[0, 0] * b[1, 1] - a[0, 1] * b[1, 0]
                   - a[1, 0] * b[0, 1] + a[1, 1] * b[0, 0])


# Gram matrix of minkowski_inner over the row-major coordinate basis
MINK_GRAM = np.array([[0.0, 0.0, 0.0, -0.5],
                      [0.0, 0.0, 0.5, 0.0],
                      [0.0, 0.5, 0.0, 0.0],
                      [-0.5, 0.0, 0.0, 0.0]])


def star_inner(x, y):
    """Second indefinite product on 4-vectors, used by the second chart."""
    return 0.5 * (x[0] * y[3] + x[1] * y[2] + x[2] * y[1] + x[3] * y[0])


def cross(a, b):
    """Half commutator of traceless matrices; antisymmetric, traceless."""
    return 0.5 * (a @ b - b @ a)


def mat_to_vec(m):
    return np.asarray(m).reshape(4).copy()


def vec_to_mat(x):
    return np.asarray(x).reshape(2, 2).copy()


def traceless_part(m):
    return m - 0.5 * (m[0, 0] + m[1, 1]) * ID2


def det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def require_group_element(m, tol=TOL_POINT):
    """Raise InvalidGroupElement unless det(m) is 1 within tol."""
    if abs(det2(m) - 1.0) > tol:
        raise InvalidGroupElement(f"determinant {det2(m)!r} is not 1")
    return m


def expm_traceless(m):
    """Exponential of a traceless 2x2 matrix in closed form.

    m @ m = -det(m) * Id for traceless m, so the series collapses to
    c * Id + s * m with circular or hyperbolic coefficients.
    """
    mu = -det2(m)
    if mu > 1e-14:
        w = np.sqrt(mu)
        return np.cosh(w) * ID2 + (np.sinh(w) / w) * m
    if mu < -1e-14:
        w = np.sqrt(-mu)
        return np.cos(w) * ID2 + (np.sin(w) / w) * m
    return ID2 + m
