"""End-to-end run: filter, similarity graph, anchors, harmonic solve, ranking."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .anchors import anchors_by_name, anchors_internal, resolve_member
from .errors import ValidationError
from .harmonic import AnchorSet, ScoreVector, laplacian, solve_harmonic
from .ingest import VoteMatrix, filter_near_unanimous
from .rank import Ranking, make_ranking
from .similarity import similarity_matrix

DEFAULT_THRESHOLD = 0.95


@dataclass(frozen=True, eq=False)
class RunResult:
    matrix: VoteMatrix
    weights: np.ndarray
    anchors: AnchorSet
    scores: ScoreVector
    ranking: Ranking
    n_dropped: int


def parse_anchor_spec(text: str) -> tuple[str, float]:
    """``"FEINGOLD=1"`` -> ``("FEINGOLD", 1.0)``; splits on the last ``=``."""
    key, sep, score = text.rpartition("=")
    if not sep or not key.strip():
        raise ValidationError(f"anchor {text!r} must look like NAME_OR_ID=SCORE")
    try:
        value = float(score)
    except ValueError:
        raise ValidationError(f"anchor {text!r}: score {score!r} is not a number") from None
    return key.strip(), value


def run(
    matrix: VoteMatrix,
    anchor_specs=None,
    auto: bool = False,
    orient: str | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> RunResult:
    """Rank every member of ``matrix``.

    Exactly one of ``anchor_specs`` (pairs of id-or-name and score) and
    ``auto`` must be given. ``orient`` picks which member of the automatic
    pair receives +1.
    """
    if bool(anchor_specs) == bool(auto):
        raise ValidationError("give either explicit anchors or auto=True, not both or neither")
    if orient is not None and not auto:
        raise ValidationError("orient only applies to automatic anchors")

    filtered = filter_near_unanimous(matrix, threshold)
    w = similarity_matrix(filtered)
    if auto:
        hint = None if orient is None else resolve_member(filtered.roster, orient)
        anchors = anchors_internal(w, orientation=hint)
    else:
        anchors = anchors_by_name(filtered.roster, anchor_specs)
    scores = solve_harmonic(laplacian(w), anchors)
    return RunResult(
        matrix=filtered,
        weights=w,
        anchors=anchors,
        scores=scores,
        ranking=make_ranking(scores, filtered.roster),
        n_dropped=matrix.n_rollcalls - filtered.n_rollcalls,
    )
