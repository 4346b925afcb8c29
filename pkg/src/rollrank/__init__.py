"""Rank voters on a single left-right axis from their roll-call records.

Members become vertices of a complete graph weighted by ``1 / (hamming + 1)``;
two or more anchors get fixed scores and everyone else receives the harmonic
(energy-minimizing) interpolation between them.
"""

from .anchors import anchors_by_name, anchors_internal
from .errors import (
    AnchorError,
    ParseError,
    RollrankError,
    SingularSystemError,
    ValidationError,
)
from .harmonic import AnchorSet, ScoreVector, energy, laplacian, partition, solve_harmonic
from .ingest import (
    Member,
    VoteMatrix,
    encode_vote,
    filter_near_unanimous,
    generate_synthetic,
    parse_csv,
    parse_ord,
)
from .pipeline import run
from .rank import Ranking, kendall_tau, make_ranking, spearman_rho, write_ranking
from .similarity import hamming_distance, similarity_matrix, weight_from_distance

__version__ = "0.1.0"

__all__ = [
    "AnchorError",
    "AnchorSet",
    "Member",
    "ParseError",
    "Ranking",
    "RollrankError",
    "ScoreVector",
    "SingularSystemError",
    "ValidationError",
    "VoteMatrix",
    "anchors_by_name",
    "anchors_internal",
    "encode_vote",
    "energy",
    "filter_near_unanimous",
    "generate_synthetic",
    "hamming_distance",
    "kendall_tau",
    "laplacian",
    "make_ranking",
    "parse_csv",
    "parse_ord",
    "partition",
    "run",
    "similarity_matrix",
    "solve_harmonic",
    "spearman_rho",
    "weight_from_distance",
    "write_ranking",
]
