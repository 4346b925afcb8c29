"""Choosing which members get fixed scores.

Two policies: explicit exemplars named by the caller, or the least similar
pair of members found in the weight matrix.
"""

from __future__ import annotations

import difflib

import numpy as np

from .errors import (
    AmbiguousAnchorError,
    AnchorNotFoundError,
    DuplicateAnchorError,
    InsufficientDataError,
    OrientationError,
)
from .harmonic import AnchorSet
from .similarity import check_weight_matrix


def resolve_member(roster, key: str) -> int:
    """Index of the member whose id equals ``key``, else whose name does.

    Name matching ignores case. Raises if nothing matches or if the name is
    shared by several members.
    """
    key = str(key).strip()
    for i, member in enumerate(roster):
        if member.id == key:
            return i
    folded = key.casefold()
    hits = [i for i, member in enumerate(roster) if member.name.casefold() == folded]
    if len(hits) == 1:
        return hits[0]
    if hits:
        ids = ", ".join(roster[i].id for i in hits)
        raise AmbiguousAnchorError(
            f"name {key!r} matches {len(hits)} members (ids {ids}); use an id instead"
        )
    names = sorted({m.name for m in roster})
    near = difflib.get_close_matches(key.upper(), [n.upper() for n in names], n=5)
    hint = f"; did you mean {', '.join(near)}?" if near else ""
    raise AnchorNotFoundError(f"no member with id or name {key!r}{hint}")


def anchors_by_name(roster, specs) -> AnchorSet:
    """Anchors from ``(id_or_name, score)`` pairs."""
    specs = list(specs)
    if len(specs) < 2:
        raise InsufficientDataError("at least two anchor specs are required")
    entries = {}
    for key, score in specs:
        i = resolve_member(roster, key)
        if i in entries:
            raise DuplicateAnchorError(
                f"member {roster[i].id!r} ({roster[i].name}) is anchored more than once"
            )
        entries[i] = float(score)
    return AnchorSet(entries)


def least_similar_pair(w) -> tuple[int, int]:
    """The pair ``(i, j)``, ``i < j``, with the smallest off-diagonal weight.

    Ties go to the lexicographically smallest ``(i, j)``.
    """
    w = check_weight_matrix(w)
    n = w.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 members, got {n}")
    rows, cols = np.triu_indices(n, k=1)
    # argmin returns the first minimum; triu_indices is row-major.
    k = int(np.argmin(w[rows, cols]))
    return int(rows[k]), int(cols[k])


def anchors_internal(w, orientation=None) -> AnchorSet:
    """Anchor the least similar pair at +1 / -1.

    ``orientation`` names the index that should receive +1. Without it the
    lower index gets +1 and the result is flagged ``arbitrary_orientation``.
    """
    i, j = least_similar_pair(w)
    if orientation is None:
        return AnchorSet({i: 1.0, j: -1.0}, arbitrary_orientation=True)
    if orientation == i:
        return AnchorSet({i: 1.0, j: -1.0})
    if orientation == j:
        return AnchorSet({j: 1.0, i: -1.0})
    raise OrientationError(
        f"orientation index {orientation} is not in the least similar pair ({i}, {j})"
    )
