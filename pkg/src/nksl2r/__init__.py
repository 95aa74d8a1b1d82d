"""Tensor algebra, finite-difference calculus and verification tooling for
degenerate holomorphic surfaces in the product of two copies of the
unit-determinant 2x2 group, carrying its canonical almost-complex metric
structure.
"""

__version__ = "0.1.0"

from .errors import (                                      # noqa: F401
    GeometryError, BaseMismatch, NotTangent, OutOfDomain,
    DegenerateInducedMetric, NotSelfAdjoint, InadmissibleParams,
    NoRealSolution, InvalidGroupElement, NotOnHyperquadric,
    DegenerateDistribution, InconsistentAngle)
from .algebra import (                                     # noqa: F401
    SQ_I, SQ_J, SQ_K, ID2, MINK_GRAM, SQRT3,
    adjugate, minkowski_inner, star_inner, cross, det2,
    traceless_part, expm_traceless, require_group_element)
from .manifold import (                                    # noqa: F401
    NKPoint, NKVector, ORIGIN,
    product_inner, apply_J, apply_P, apply_Q,
    nk_metric, nk_metric_via_J, tensor_G, nabla_G, nabla_P,
    curvature_R, curvature_R4,
    to_ambient, from_ambient, ambient_convert,
    isometry, isometry_swap, isometry_translate,
    h31_chart, h31_differential)
from .calculus import (                                    # noqa: F401
    SurfaceMap, Jet2, ShapeData, jet, first_jet,
    nk_connection, nk_connection_field, product_connection,
    sl2_connection, coordinate_patch, nabla_P_fd,
    unit_normal, shape_operator, classify_operator,
    mean_curvature_sq, curvature_commutator)
from .catalog import (                                     # noqa: F401
    AngleParams, angle_params, factor_type, type_table,
    signed_T, iv_param, solve_type_I, solve_type_IV, type_II_variant,
    solve_congruency, CongruencySolution, FactorSolution,
    null_transform_matrix, null_coord_transform, null_frame_matrices,
    CatalogEntry, ENTRY_NAMES, get_entry, make_surface)
from .verifier import (                                    # noqa: F401
    CheckItem, CheckReport,
    check_identity_suite, check_isometry_suite, check_surface,
    XFrame, build_X_frame, extract_phi,
    FRAME_GRAM, FRAME_LABELS, TABLE_LABELS, frame_connection_table,
    measured_connection_table, compare_connection, verify_entry)
