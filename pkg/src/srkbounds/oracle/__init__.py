"""Brute-force ground truth for small sum-rank-metric graphs."""

from .field import FieldTable, field_for, smallest_primitive_polynomial
from .graph import (
    DEFAULT_VERTEX_CAP,
    MatrixTuple,
    OracleGraph,
    ShapeMismatchError,
    TupleCodec,
    VertexCapExceeded,
    build_graph,
    connecting_set,
    geodesic_distances,
    srk_distance,
    srk_weight,
)
from .independence import AlphaResult, exact_alpha_k, is_k_independent, max_independent_set, power_graph_rows
from .regularity import (
    RegularityReport,
    distance_profile,
    explicit_distance_regular,
    partial_regularity_witness,
    verify_regularities,
)

__all__ = [
    "DEFAULT_VERTEX_CAP",
    "AlphaResult",
    "FieldTable",
    "MatrixTuple",
    "OracleGraph",
    "RegularityReport",
    "ShapeMismatchError",
    "TupleCodec",
    "VertexCapExceeded",
    "build_graph",
    "connecting_set",
    "distance_profile",
    "exact_alpha_k",
    "explicit_distance_regular",
    "field_for",
    "geodesic_distances",
    "is_k_independent",
    "max_independent_set",
    "partial_regularity_witness",
    "power_graph_rows",
    "smallest_primitive_polynomial",
    "srk_distance",
    "srk_weight",
    "verify_regularities",
]
