"""Exact arithmetic for generalized polyhedral convex sets and functions."""

from .errors import (
    DimensionMismatchError,
    DomainError,
    EmptyDomainIntersectionError,
    EmptySetError,
    NotAFaceError,
    NotAnEpigraphError,
    NotContainingOriginError,
    OracleMismatchError,
    ParseError,
    PointNotInDomainError,
    PointNotInSetError,
    PolycalcError,
)
from .faces import (
    Face,
    active_set,
    canonical_face,
    enumerate_faces,
    exposed_value,
    exposing_functional,
    face_from_index_set,
    relative_interior_point,
)
from .forms import ConstraintForm, GeneratorForm, constraints_to_generators, generators_to_constraints
from .functions import (
    INF,
    Cell,
    GPCFunction,
    conjugate,
    conjugate_value,
    directional_derivative,
    epigraph,
    fenchel_young_check,
    from_epigraph,
    indicator,
    inf_convolution,
    pwl_decompose,
    subdifferential,
)
from .polyhedra import (
    Intersecting,
    LinearMap,
    Polyhedron,
    Separation,
    canonicalize_constraints,
    cone_of,
    hull_union,
    image,
    intersect,
    minkowski_sum,
    normal_cone,
    polar,
    preimage,
    recession_cone,
    separate,
    set_equal,
    subset,
    tangent_cone,
    translate,
)
from .textformat import Document, parse, parse_all

__version__ = "0.1.0"
