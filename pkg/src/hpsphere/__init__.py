"""Homogeneous two-spheres in quaternionic projective space HP^n.

Build orbits of SU(2) acting through quaternionic representations, decide
minimality algebraically, list the minimal families and check their
conformality and Gauss curvature numerically.
"""

from .classify import (
    FamilyDescriptor,
    Kind,
    base_point_for,
    completeness_sweep,
    enumerate_families,
    make_family,
    verify_base_point,
    verify_family,
)
from .irreps import LadderOps, PolyVector, RepSum, ladder_ops, lambda_matrix, weight_vector, xi_matrix
from .orbit import (
    BasePoint,
    closed_form_curvature,
    immerse,
    minimality_residual,
    numeric_curvature,
    numeric_metric,
    tangent_data,
)
from .quaternion import QuatMatrix, Quaternion, QuatVector, qinner, qmatapply, qmul
from .su2 import AlgebraElement, GroupElement, chart_section, exp_map, haar_sample

__version__ = "0.1.0"
