"""Ordered tree edit distance via decomposition strategies."""
from .algorithms import (
    DeleteFromF,
    DeleteFromG,
    Direction,
    DistanceResult,
    EditScript,
    RandomStrategy,
    Relabel,
    apply_script,
    distance,
    distance_dmrw,
    distance_klein,
    distance_strategy,
    distance_sz,
    edit_script,
    klein_strategy,
    right_strategy,
)
from .costs import CostModel, from_table, unit_model
from .forest import Subforest, Tree, TreeIndex, build_index
from .instrumentation import (
    RunStats,
    check_dmrw_bounds,
    gen_balanced,
    gen_comb,
    gen_comb_mirror,
    gen_path,
    gen_random,
    gen_zigzag,
    growth_report,
)
from .oracle import oracle_distance
from .treeio import emit_bracket, parse_bracket, parse_dot_bracket

__all__ = [
    "CostModel", "DeleteFromF", "DeleteFromG", "Direction", "DistanceResult",
    "EditScript", "RandomStrategy", "Relabel", "RunStats", "Subforest", "Tree",
    "TreeIndex", "apply_script", "build_index", "check_dmrw_bounds", "distance",
    "distance_dmrw", "distance_klein", "distance_strategy", "distance_sz",
    "edit_script", "emit_bracket", "from_table", "gen_balanced", "gen_comb",
    "gen_comb_mirror", "gen_path", "gen_random", "gen_zigzag", "growth_report",
    "klein_strategy", "oracle_distance", "parse_bracket", "parse_dot_bracket",
    "right_strategy", "unit_model",
]
