"""Rational double point combinations on deformations of the fourteen triangle singularities."""

from .graphs import (
    EMPTY,
    ComponentType,
    DynkinGraph,
    FormalSumError,
    MarkedGraph,
    classify_graph,
    format_formal_sum,
    parse_formal_sum,
    rank,
)
from .lattice import (
    GramMatrix,
    Signature,
    direct_sum,
    extend_component,
    gram_of,
    highest_root_coefficients,
    hyperbolic_plane,
    signature,
)
from .transforms import (
    ElementaryChoice,
    TieChoice,
    Witness,
    elementary_transform,
    enumerate_elementary,
    enumerate_tie,
    reachable_one_step,
    tie_transform,
)
from .triangle import (
    TriangleType,
    check_membership,
    enumerate_dynkin_subgraphs,
    gabrielov_graph,
    lookup,
    pc,
    pc_bar,
    triangle_table,
    verify_duality,
)

__version__ = "0.1.0"
