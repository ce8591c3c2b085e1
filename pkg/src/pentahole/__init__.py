"""Empty convex pentagons (5-holes) and disjoint families of them in planar point sets."""

from .disjoint_pentagons import (
    DisjointPair,
    SeparablePartition,
    UVWLabeling,
    WitnessReport,
    dividing_diagonals,
    find_two_disjoint_5holes,
    label_uvw,
    separable_partition,
    verify_witness,
    witness_5n_47,
    witness_doubling,
)
from .geom_core import (
    C_MAX,
    ConvexPolygon,
    Orientation,
    Point,
    PointSet,
    convex_hull,
    convex_layers,
    convex_polygons_disjoint,
    orientation,
    validate_general_position,
)
from .holes import (
    Hole,
    classify_9points,
    enumerate_k_holes,
    find_5hole,
    is_empty_convex,
)
from .cli_io import parse_points, random_general_position, render_svg

__all__ = [
    "C_MAX",
    "ConvexPolygon",
    "DisjointPair",
    "Hole",
    "Orientation",
    "Point",
    "PointSet",
    "SeparablePartition",
    "UVWLabeling",
    "WitnessReport",
    "classify_9points",
    "convex_hull",
    "convex_layers",
    "convex_polygons_disjoint",
    "dividing_diagonals",
    "enumerate_k_holes",
    "find_5hole",
    "find_two_disjoint_5holes",
    "is_empty_convex",
    "label_uvw",
    "orientation",
    "parse_points",
    "random_general_position",
    "render_svg",
    "separable_partition",
    "validate_general_position",
    "verify_witness",
    "witness_5n_47",
    "witness_doubling",
]
