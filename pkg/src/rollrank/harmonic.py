"""Graph Laplacian, quadratic energy, and the harmonic solve with fixed anchors.

Given anchors (labeled vertices) with fixed scores ``f_L``, the scores of the
remaining vertices minimizing ``f' L f`` satisfy::

    L_UU f_U = -L_UL f_L

which is solved by Cholesky factorization of ``L_UU`` (never by inversion).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import AnchorError, DimensionError, SingularSystemError
from .similarity import check_weight_matrix


@dataclass(frozen=True)
class AnchorSet:
    """Fixed scores keyed by member index.

    ``arbitrary_orientation`` is set when the sign assignment was not chosen
    by the caller (internal anchor selection without an orientation hint).
    """

    entries: dict
    arbitrary_orientation: bool = False

    def __post_init__(self):
        entries = {int(i): float(s) for i, s in dict(self.entries).items()}
        if len(entries) < 2:
            raise AnchorError("at least two anchors are required")
        for i, s in entries.items():
            if i < 0:
                raise AnchorError(f"anchor index {i} is negative")
            if not -1.0 <= s <= 1.0:
                raise AnchorError(f"anchor score {s} for index {i} outside [-1, 1]")
        scores = entries.values()
        if not (any(s > 0 for s in scores) and any(s < 0 for s in scores)):
            raise AnchorError("anchors need at least one positive and one negative score")
        object.__setattr__(self, "entries", dict(sorted(entries.items())))

    @property
    def indices(self) -> list[int]:
        return list(self.entries)

    def check(self, n: int) -> None:
        bad = [i for i in self.entries if i >= n]
        if bad:
            raise AnchorError(f"anchor indices {bad} out of range for {n} members")


@dataclass(frozen=True, eq=False)
class ScoreVector:
    f: np.ndarray
    labeled_mask: np.ndarray

    def __len__(self):
        return len(self.f)


class Partition(NamedTuple):
    uu: np.ndarray
    ul: np.ndarray
    f_labeled: np.ndarray
    labeled: np.ndarray
    unlabeled: np.ndarray


def laplacian(w) -> np.ndarray:
    """Combinatorial Laplacian ``diag(W 1) - W``."""
    w = check_weight_matrix(w)
    return np.diag(w.sum(axis=1)) - w


def energy(f, w) -> float:
    """Sum over all ordered pairs ``(i, j)`` of ``W_ij (f_i - f_j)**2``.

    Each unordered pair is counted twice, so this equals ``2 f' L f``.
    """
    f = np.asarray(f, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if f.ndim != 1 or w.shape != (f.size, f.size):
        raise DimensionError(f"f has length {f.size} but W has shape {w.shape}")
    diff = f[:, None] - f[None, :]
    return float(np.sum(w * diff * diff))


def quadratic_form(f, lap) -> float:
    f = np.asarray(f, dtype=np.float64)
    return float(f @ np.asarray(lap) @ f)


def partition(lap, anchors: AnchorSet) -> Partition:
    """Split the Laplacian into unlabeled/labeled blocks.

    Unlabeled indices are kept in ascending order; ``labeled`` follows the
    (sorted) order of ``anchors.entries`` and matches ``f_labeled``.
    """
    lap = np.asarray(lap, dtype=np.float64)
    n = lap.shape[0]
    anchors.check(n)
    labeled = np.array(anchors.indices, dtype=np.intp)
    mask = np.zeros(n, dtype=bool)
    mask[labeled] = True
    unlabeled = np.flatnonzero(~mask)
    f_labeled = np.array([anchors.entries[i] for i in labeled], dtype=np.float64)
    return Partition(
        uu=lap[np.ix_(unlabeled, unlabeled)],
        ul=lap[np.ix_(unlabeled, labeled)],
        f_labeled=f_labeled,
        labeled=labeled,
        unlabeled=unlabeled,
    )


def _solve_block(uu, rhs):
    try:
        factor = scipy.linalg.cho_factor(uu, lower=True, check_finite=True)
    except np.linalg.LinAlgError:
        pass
    else:
        return scipy.linalg.cho_solve(factor, rhs)

    # Not positive definite: try a pivoted LU before giving up.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(uu, check_finite=True)
    pivots = np.abs(np.diag(lu))
    scale = max(np.abs(uu).max(), np.finfo(float).tiny)
    if pivots.min() <= uu.shape[0] * np.finfo(float).eps * scale:
        raise SingularSystemError(
            "the unlabeled block of the Laplacian is singular; check that every "
            "connected component of the similarity graph contains an anchor"
        )
    return scipy.linalg.lu_solve((lu, piv), rhs)


def solve_harmonic(lap, anchors: AnchorSet) -> ScoreVector:
    """Scores minimizing the Laplacian energy with anchors held fixed."""
    lap = np.asarray(lap, dtype=np.float64)
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise DimensionError(f"Laplacian must be square, got shape {lap.shape}")
    part = partition(lap, anchors)
    n = lap.shape[0]
    f = np.empty(n, dtype=np.float64)
    f[part.labeled] = part.f_labeled
    mask = np.zeros(n, dtype=bool)
    mask[part.labeled] = True

    if part.unlabeled.size:
        rhs = -(part.ul @ part.f_labeled)
        f_u = _solve_block(part.uu, rhs)
        residual = np.abs(part.uu @ f_u - rhs).max()
        if not np.isfinite(residual) or residual > 1e-9 * max(1.0, np.abs(rhs).max()):
            raise SingularSystemError(
                f"harmonic solve is numerically unstable (residual {residual:.3g}); "
                "check graph connectivity"
            )
        f[part.unlabeled] = f_u

    f.setflags(write=False)
    mask.setflags(write=False)
    return ScoreVector(f, mask)
