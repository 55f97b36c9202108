"""Cantor-set constructions, piecewise-affine extensions of their natural
correspondences, and exact dilatation statistics of the resulting maps."""

from .analysis import (DavidParams, DilatationProfile, check_david,
                       dilatation_profile, fit_david, level_ratio, p_of_K,
                       qc_dimension_bounds, theoremA_report, theoremB_report)
from .cantor import (CantorLevel, DimensionEstimate, GaugeSequence,
                     box_dimension, build_level, build_sigma_level,
                     count_boxes, count_segment_boxes, depth_guard,
                     dimension_bounds, frostman_check, frostman_profile,
                     make_gauge, pointwise_box_dimension)
from .errors import (DegenerateFitError, DepthLimitError, DomainError,
                     GeometryError, OrientationError, QCForgeError,
                     ValidationError)
from .geometry import (AffineMap, Point, Triangle, affine_three_point,
                       beltrami, compose, dilatation, dilatation_three_point,
                       invert_affine)
from .homeo import (Construction, EvalResult, HierarchicalMap, Polyline,
                    curve_box_dimension, curve_polyline, evaluate, invert,
                    max_dilatation_per_level, standard_homeo, theoremB_homeo,
                    twist_parameter)
from .qcmaps import (PiecewiseAffineMap, ValidationReport, annulus_extension,
                     annulus_extension_any, invert_piecewise, twist_extension,
                     validate)

__version__ = "0.1.0"
