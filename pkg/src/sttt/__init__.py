"""Dihedral symmetry toolkit for impartial misere super tic-tac-toe.

Spiral numbering of square grids, the layer rotations and reflections that
generate a dihedral action on boards and games, orbit and canonical form
computation, and an exhaustive census of winning 2x2 boards grouped into
isomorphism classes.
"""

from .board import (
    BitstringError,
    Board,
    CellState,
    act_board,
    board_orbit,
    canonical_form,
    from_bitstring,
    to_bitstring,
)
from .census import (
    CensusDiff,
    ClosureError,
    IsoClass,
    ListingParseError,
    bundled_census_text,
    classes_from_jsonl,
    classes_to_jsonl,
    classes_to_listing_text,
    declared_class_counts,
    diff_census,
    enumerate_winning_boards,
    parse_census_text,
    partition_classes,
    size_histogram,
)
from .dihedral import (
    DihedralReport,
    GroupElement,
    RelationCheck,
    dihedral_order,
    full_reflection,
    full_rotation,
    group_element,
    group_elements,
    identity_element,
    layer_reflection,
    layer_rotation,
    ring_sizes,
    verify_dihedral,
)
from .game import (
    FieldStatus,
    GameState,
    GameValidation,
    IllegalMoveError,
    InvalidGameError,
    Move,
    TerminalStateError,
    act_game,
    apply_move,
    final_board,
    game_orbit,
    grid_lines,
    is_valid_game,
    legal_moves,
    replay,
)
from .perm import Permutation, perm_order
from .spiral import (
    InvalidLayerError,
    InvalidSizeError,
    NumberedSquare,
    level_set,
    spiral_numbering,
)

__version__ = "0.1.0"

__all__ = [
    "BitstringError",
    "Board",
    "CellState",
    "CensusDiff",
    "ClosureError",
    "DihedralReport",
    "FieldStatus",
    "GameState",
    "GameValidation",
    "GroupElement",
    "IllegalMoveError",
    "InvalidGameError",
    "InvalidLayerError",
    "InvalidSizeError",
    "IsoClass",
    "ListingParseError",
    "Move",
    "NumberedSquare",
    "Permutation",
    "RelationCheck",
    "TerminalStateError",
    "act_board",
    "act_game",
    "apply_move",
    "board_orbit",
    "bundled_census_text",
    "canonical_form",
    "classes_from_jsonl",
    "classes_to_jsonl",
    "classes_to_listing_text",
    "declared_class_counts",
    "diff_census",
    "dihedral_order",
    "enumerate_winning_boards",
    "final_board",
    "from_bitstring",
    "full_reflection",
    "full_rotation",
    "game_orbit",
    "grid_lines",
    "group_element",
    "group_elements",
    "identity_element",
    "is_valid_game",
    "layer_reflection",
    "layer_rotation",
    "legal_moves",
    "level_set",
    "parse_census_text",
    "partition_classes",
    "perm_order",
    "replay",
    "ring_sizes",
    "size_histogram",
    "spiral_numbering",
    "to_bitstring",
    "verify_dihedral",
]
