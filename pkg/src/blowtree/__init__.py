"""Exact blow-up calculus for trees of curves at infinity over the plane."""

from .engine import (
    BlowupError,
    BlowupState,
    EdgeBlowup,
    LabelReport,
    VertexBlowup,
    ancestors,
    blow_down,
    blow_up_edge,
    blow_up_vertex,
    final_by_labels,
    is_final,
    recompute_from_scratch,
    replay,
    seed_p2,
)
from .forest import (
    WeightedForest,
    det_fast,
    det_gram,
    det_matchings,
    remove_edge,
    remove_vertices,
    signature,
)

__all__ = [
    "BlowupError", "BlowupState", "EdgeBlowup", "LabelReport", "VertexBlowup",
    "ancestors", "blow_down", "blow_up_edge", "blow_up_vertex", "final_by_labels",
    "is_final", "recompute_from_scratch", "replay", "seed_p2",
    "WeightedForest", "det_fast", "det_gram", "det_matchings", "remove_edge",
    "remove_vertices", "signature",
]
