"""Hamming distances between vote vectors and the similarity graph built on them."""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, InsufficientDataError, ValidationError
from .ingest import VoteMatrix


def hamming_distance(u, v) -> int:
    """Number of roll calls on which two members recorded different positions.

    Yea, nay and not-voting are three distinct symbols, so a vote against an
    abstention counts as a full difference.
    """
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape or u.ndim != 1:
        raise DimensionError(f"vote vectors differ in shape: {u.shape} vs {v.shape}")
    return int(np.count_nonzero(u != v))


def weight_from_distance(d):
    """Similarity ``1 / (d + 1)``; accepts a scalar or an integer array."""
    d_arr = np.asarray(d)
    if np.any(d_arr < 0):
        raise ValidationError("distance must be nonnegative")
    w = 1.0 / (d_arr.astype(np.float64) + 1.0)
    return float(w) if w.ndim == 0 else w


def distance_matrix(votes) -> np.ndarray:
    """All pairwise Hamming distances as an ``int64`` array."""
    votes = np.asarray(votes)
    n = votes.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        out[i] = np.count_nonzero(votes != votes[i], axis=1)
    return out


def similarity_matrix(m, weight=weight_from_distance) -> np.ndarray:
    """Dense weight matrix ``W`` for a VoteMatrix (or a raw vote array).

    Parameters
    ----------
    m : VoteMatrix or array_like
        Encoded votes, one row per member.
    weight : callable
        Vectorized map from an integer distance array to weights. Defaults to
        :func:`weight_from_distance`.

    Returns
    -------
    numpy.ndarray
        Symmetric ``(n, n)`` float64 array with a zero diagonal, rows in
        roster order.
    """
    votes = m.votes if isinstance(m, VoteMatrix) else np.asarray(m)
    if votes.ndim != 2:
        raise DimensionError(f"votes must be 2-D, got shape {votes.shape}")
    n = votes.shape[0]
    if n < 2:
        raise InsufficientDataError(f"need at least 2 members, got {n}")
    w = np.asarray(weight(distance_matrix(votes)), dtype=np.float64)
    np.fill_diagonal(w, 0.0)
    return w


def check_weight_matrix(w) -> np.ndarray:
    """Validate a weight matrix: square, finite, symmetric, nonnegative."""
    w = np.asarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionError(f"weight matrix must be square, got shape {w.shape}")
    if not np.isfinite(w).all():
        raise ValidationError("weight matrix has non-finite entries")
    if (w < 0).any():
        raise ValidationError("weight matrix has negative entries")
    if not np.array_equal(w, w.T):
        raise ValidationError("weight matrix is not symmetric")
    return w


def write_weights_csv(w, roster) -> bytes:
    """Render ``W`` as CSV with member ids labelling rows and columns."""
    w = np.asarray(w)
    ids = [member.id for member in roster]
    lines = [",".join(["id"] + ids)]
    for member_id, row in zip(ids, w):
        lines.append(",".join([member_id] + [repr(float(x)) for x in row]))
    return ("\n".join(lines) + "\n").encode("utf-8")
