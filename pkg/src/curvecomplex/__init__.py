"""Curves on compact orientable surfaces with boundary: intersection numbers,
curve types, pants adjacency graphs, the Farey graph, and rigidity checks for
finite maps between curve complexes."""

from types import ModuleType as _ModuleType

from .complex import (
    CurveSet,
    MinimalIntersection,
    SmallIntersection,
    adjacency_graph,
    chain_neighbors,
    complex_adjacent,
    curve_set,
    enumerate_curves,
    is_pants_decomposition,
    link,
    max_disjoint_separating,
    minimal_intersection_type,
    pants_census,
    pants_decompositions,
    small_intersection_type,
)
from .curves import (
    Curve,
    CurveType,
    InvalidCurve,
    ModelMismatch,
    algebraic_intersection,
    canonicalize,
    curve_type,
    cut_along,
    filled_subsurface,
    geometric_intersection,
    is_peripheral,
    make_curve,
    self_intersection,
)
from .farey import FareyBall, Slope, ball, dual_graph, slope_det, slope_of_curve
from .mapping import MappingClass, apply, compose, generator_set, invert
from .rigidity import (
    FitResult,
    PropertyReport,
    VertexMap,
    check_simplicial,
    check_star_injective,
    edge_consistency,
    fit_mapping_class,
    kernel_membership,
    run_lemma_battery,
)
from .spine import SpineModel, UnsupportedSurface, WordSyntaxError, spine_model
from .surface import SurfaceType, complexity, homeomorphic, inventory

__all__ = [name for name, obj in list(globals().items())
           if not name.startswith("_") and not isinstance(obj, _ModuleType)]
