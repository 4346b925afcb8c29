"""Orderings of members by score, rank correlations, and output formats."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np
import scipy.stats

from .errors import DimensionError, ValidationError
from .harmonic import ScoreVector
from .ingest import Member

FORMATS = ("text", "csv", "json")

_SIX_PLACES = Decimal("0.000001")


@dataclass(frozen=True)
class RankRow:
    rank: int
    member: Member
    score: float
    anchored: bool = False


@dataclass(frozen=True)
class Ranking:
    rows: tuple[RankRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def position(self, member_id: str) -> int:
        for row in self.rows:
            if row.member.id == member_id:
                return row.rank
        raise KeyError(member_id)

    def scores_by_id(self) -> dict:
        return {row.member.id: row.score for row in self.rows}


def make_ranking(scores, roster) -> Ranking:
    """Sort members by descending score; ties go by name, then id."""
    if isinstance(scores, ScoreVector):
        f, mask = scores.f, scores.labeled_mask
    else:
        f = np.asarray(scores, dtype=np.float64)
        mask = np.zeros(f.shape, dtype=bool)
    roster = list(roster)
    if len(f) != len(roster):
        raise DimensionError(f"{len(f)} scores for {len(roster)} members")
    order = sorted(range(len(roster)), key=lambda i: (-f[i], roster[i].name, roster[i].id))
    return Ranking(
        tuple(
            RankRow(rank, roster[i], float(f[i]), bool(mask[i]))
            for rank, i in enumerate(order, start=1)
        )
    )


def _paired_scores(a: Ranking, b: Ranking):
    sa, sb = a.scores_by_id(), b.scores_by_id()
    if sa.keys() != sb.keys():
        missing = sorted(sa.keys() ^ sb.keys())
        raise ValidationError(f"rankings cover different members: {missing[:10]}")
    ids = sorted(sa)
    return np.array([sa[k] for k in ids]), np.array([sb[k] for k in ids])


def kendall_tau(a: Ranking, b: Ranking) -> float:
    """Kendall's tau-b between two rankings of the same members.

    Members with equal scores in a ranking count as tied.
    """
    x, y = _paired_scores(a, b)
    return float(scipy.stats.kendalltau(x, y, variant="b").statistic)


def spearman_rho(a: Ranking, b: Ranking) -> float:
    """Spearman correlation using average ranks for tied scores."""
    x, y = _paired_scores(a, b)
    return float(scipy.stats.spearmanr(x, y).statistic)


def format_score(score: float) -> str:
    """Six decimals, round-half-even on the shortest decimal repr."""
    text = format(Decimal(repr(float(score))).quantize(_SIX_PLACES, ROUND_HALF_EVEN), "f")
    return "0.000000" if text == "-0.000000" else text


def _text_table(r: Ranking) -> str:
    width = max([len("Name")] + [len(row.member.name) for row in r.rows])
    rank_w = max(len("Rank"), len(str(len(r.rows))))
    lines = [f"{'Rank':>{rank_w}}  {'Name':<{width}}  Party"]
    for row in r.rows:
        lines.append(f"{row.rank:>{rank_w}}  {row.member.name:<{width}}  {row.member.party}")
    return "\n".join(lines) + "\n"


def _csv(r: Ranking) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["rank", "id", "name", "party", "state", "score", "anchored"])
    for row in r.rows:
        m = row.member
        writer.writerow(
            [row.rank, m.id, m.name, m.party, m.state, format_score(row.score),
             "1" if row.anchored else "0"]
        )
    return out.getvalue()


def ranking_records(r: Ranking) -> list[dict]:
    return [
        {
            "rank": row.rank,
            "id": row.member.id,
            "name": row.member.name,
            "party": row.member.party,
            "state": row.member.state,
            "score": float(format_score(row.score)),
            "anchored": row.anchored,
        }
        for row in r.rows
    ]


def write_ranking(r: Ranking, format: str = "text") -> bytes:
    """Serialize a ranking as ``text`` (Rank/Name/Party table), ``csv`` or ``json``."""
    if format == "text":
        body = _text_table(r)
    elif format == "csv":
        body = _csv(r)
    elif format == "json":
        body = json.dumps(ranking_records(r), indent=2) + "\n"
    else:
        raise ValidationError(f"unknown output format {format!r}; expected one of {FORMATS}")
    return body.encode("utf-8")


def ranking_from_records(records) -> Ranking:
    return Ranking(
        tuple(
            RankRow(
                int(rec["rank"]),
                Member(rec["id"], rec["name"], rec["party"], rec.get("state", "")),
                float(rec["score"]),
                bool(rec["anchored"]),
            )
            for rec in records
        )
    )


def read_ranking_json(data) -> Ranking:
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    return ranking_from_records(json.loads(data))
