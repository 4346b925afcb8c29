"""Roll-call ingestion: vote encoding, CSV and fixed-width ``.ord`` parsing,
the near-unanimous filter and a synthetic two-bloc generator.

Raw vote codes follow the VoteView convention::

    1, 2, 3     yea          -> +1
    4, 5, 6     nay          -> -1
    0, 7, 8, 9  not voting   ->  0
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, MalformedDataError, ParseError, ValidationError

YEA, NAY, ABSENT = 1, -1, 0

PARTIES = ("D", "R", "I", "?")

_CODE_TABLE = np.array([0, 1, 1, 1, -1, -1, -1, 0, 0, 0], dtype=np.int8)

# Raw codes written back out by write_csv / write_ord.
_RAW_FOR_VALUE = {YEA: "1", NAY: "6", ABSENT: "9"}

CSV_FIXED_COLUMNS = ("id", "name", "party", "state")

ORD_HEADER_WIDTH = 36
_ORD_PARTY_CODES = {100: "D", 200: "R"}


@dataclass(frozen=True)
class Member:
    id: str
    name: str
    party: str = "?"
    state: str = ""

    def __post_init__(self):
        if not self.id:
            raise ValidationError("member id must be non-empty")
        if not self.name:
            raise ValidationError(f"member {self.id!r} has an empty name")
        if self.party not in PARTIES:
            raise ValidationError(
                f"member {self.id!r}: party must be one of {PARTIES}, got {self.party!r}"
            )


@dataclass(frozen=True, eq=False)
class VoteMatrix:
    """Encoded votes, one row per member and one column per roll call.

    ``votes`` is stored as a read-only ``int8`` array with values in
    {-1, 0, +1}; row ``i`` belongs to ``roster[i]``.
    """

    roster: tuple[Member, ...]
    votes: np.ndarray
    rollcall_ids: tuple[str, ...] = field(default=())

    def __post_init__(self):
        roster = tuple(self.roster)
        votes = np.array(self.votes, dtype=np.int8, copy=True)
        if votes.ndim != 2:
            if votes.size == 0 and len(roster) == 0:
                votes = votes.reshape(0, len(self.rollcall_ids))
            else:
                raise DimensionError(f"votes must be 2-D, got shape {votes.shape}")
        rollcall_ids = tuple(self.rollcall_ids) or tuple(
            f"v{k + 1}" for k in range(votes.shape[1])
        )
        if votes.shape != (len(roster), len(rollcall_ids)):
            raise DimensionError(
                f"votes shape {votes.shape} does not match "
                f"{len(roster)} members x {len(rollcall_ids)} roll calls"
            )
        if not np.isin(votes, (-1, 0, 1)).all():
            raise MalformedDataError("vote values must lie in {-1, 0, +1}")
        ids = [m.id for m in roster]
        if len(set(ids)) != len(ids):
            raise ValidationError("member ids must be unique within a roster")
        votes.setflags(write=False)
        object.__setattr__(self, "roster", roster)
        object.__setattr__(self, "votes", votes)
        object.__setattr__(self, "rollcall_ids", rollcall_ids)

    @property
    def n_members(self) -> int:
        return len(self.roster)

    @property
    def n_rollcalls(self) -> int:
        return len(self.rollcall_ids)

    def __eq__(self, other):
        if not isinstance(other, VoteMatrix):
            return NotImplemented
        return (
            self.roster == other.roster
            and self.rollcall_ids == other.rollcall_ids
            and np.array_equal(self.votes, other.votes)
        )

    __hash__ = None

    def index_of(self, member_id: str) -> int:
        for i, m in enumerate(self.roster):
            if m.id == member_id:
                return i
        raise KeyError(member_id)


def encode_vote(raw_code: int) -> int:
    """Map a raw 0-9 roll-call code to +1 (yea), -1 (nay) or 0 (no vote)."""
    if isinstance(raw_code, bool) or not isinstance(raw_code, (int, np.integer)):
        raise MalformedDataError(f"vote code must be an integer 0-9, got {raw_code!r}")
    if not 0 <= raw_code <= 9:
        raise MalformedDataError(f"vote code {raw_code} outside [0, 9]")
    return int(_CODE_TABLE[raw_code])


def _read_text(source) -> str:
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif isinstance(source, str):
        return source
    else:
        data = source.read()
        if isinstance(data, str):
            return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"source is not valid UTF-8: {exc}") from None


def _encode_digit(token: str, line: int, column: str) -> int:
    if len(token) != 1 or token not in "0123456789":
        raise ParseError(
            f"vote cell {column} must be a single digit 0-9, got {token!r}", line=line
        )
    return int(_CODE_TABLE[int(token)])


def parse_csv(source) -> VoteMatrix:
    """Parse ``id,name,party,state,v1,...,vm`` rows into a VoteMatrix.

    ``source`` may be a binary or text stream, ``bytes`` or ``str``. Blank
    lines are ignored. An empty party cell becomes ``"?"``.
    """
    reader = csv.reader(io.StringIO(_read_text(source), newline=""))
    header = None
    roster, rows, seen = [], [], {}
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if header is None:
            header = [h.strip() for h in row]
            if tuple(h.lower() for h in header[:4]) != CSV_FIXED_COLUMNS:
                raise ParseError(
                    "header must start with 'id,name,party,state', "
                    f"got {','.join(header[:4])!r}",
                    line=line,
                )
            rollcall_ids = header[4:]
            if len(set(rollcall_ids)) != len(rollcall_ids):
                raise ParseError("duplicate roll-call column names", line=line)
            continue
        if len(row) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(row)}", line=line
            )
        member_id, name, party, state = (cell.strip() for cell in row[:4])
        if member_id in seen:
            raise ParseError(
                f"duplicate member id {member_id!r} (first seen on line {seen[member_id]})",
                line=line,
            )
        seen[member_id] = line
        party = party.upper() or "?"
        try:
            member = Member(member_id, name, party, state)
        except ValidationError as exc:
            raise ParseError(str(exc), line=line) from None
        roster.append(member)
        rows.append(
            [
                _encode_digit(tok.strip(), line, rollcall_ids[k])
                for k, tok in enumerate(row[4:])
            ]
        )
    if header is None:
        raise ParseError("empty input: no header row")
    votes = np.array(rows, dtype=np.int8).reshape(len(rows), len(rollcall_ids))
    return VoteMatrix(tuple(roster), votes, tuple(rollcall_ids))


def _ord_party(region: str, line: int) -> str:
    try:
        code = int(region)
    except ValueError:
        raise ParseError(f"party code {region!r} is not an integer", line=line) from None
    return _ORD_PARTY_CODES.get(code, "I")


def parse_ord(source) -> VoteMatrix:
    """Parse a legacy fixed-width VoteView ``.ord`` file.

    Columns 1-36 hold the member header; only the id (cols 4-8), party code
    (cols 21-23; 100 -> D, 200 -> R, anything else -> I) and name (cols
    26-36) are read. Columns 37 onward hold one vote digit per roll call.
    """
    roster, rows, seen = [], [], {}
    width = None
    for line_no, raw in enumerate(_read_text(source).splitlines(), start=1):
        if not raw.strip():
            continue
        if len(raw) < ORD_HEADER_WIDTH:
            raise ParseError(
                f"record is {len(raw)} characters, shorter than the "
                f"{ORD_HEADER_WIDTH}-character header region",
                line=line_no,
            )
        member_id = raw[3:8].strip()
        name = raw[25:36].strip()
        party = _ord_party(raw[20:23], line_no)
        region = raw[ORD_HEADER_WIDTH:].rstrip()
        bad = next((ch for ch in region if ch not in "0123456789"), None)
        if bad is not None:
            raise ParseError(f"vote digit {bad!r} outside [0, 9]", line=line_no)
        if width is None:
            width = len(region)
        elif len(region) != width:
            raise ParseError(
                f"vote region has {len(region)} roll calls, expected {width}",
                line=line_no,
            )
        if member_id in seen:
            raise ParseError(
                f"duplicate member id {member_id!r} (first seen on line {seen[member_id]})",
                line=line_no,
            )
        seen[member_id] = line_no
        try:
            roster.append(Member(member_id, name, party, ""))
        except ValidationError as exc:
            raise ParseError(str(exc), line=line_no) from None
        rows.append(_CODE_TABLE[np.frombuffer(region.encode("ascii"), np.uint8) - 48])
    width = width or 0
    votes = np.array(rows, dtype=np.int8).reshape(len(rows), width)
    return VoteMatrix(tuple(roster), votes, tuple(f"v{k + 1}" for k in range(width)))


def load(path, fmt=None) -> VoteMatrix:
    """Read a vote file, picking the parser from ``fmt`` or the file suffix."""
    path = str(path)
    if fmt is None:
        fmt = "ord" if path.lower().endswith(".ord") else "csv"
    parser = {"csv": parse_csv, "ord": parse_ord}.get(fmt)
    if parser is None:
        raise ValidationError(f"unknown input format {fmt!r}")
    with open(path, "rb") as fh:
        return parser(fh)


def write_csv(m: VoteMatrix) -> bytes:
    """Serialize a VoteMatrix in the CSV layout, using raw codes 1/6/9."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(CSV_FIXED_COLUMNS) + list(m.rollcall_ids))
    for member, row in zip(m.roster, m.votes):
        writer.writerow(
            [member.id, member.name, member.party, member.state]
            + [_RAW_FOR_VALUE[int(v)] for v in row]
        )
    return out.getvalue().encode("utf-8")


def write_ord(m: VoteMatrix, congress: int = 0) -> bytes:
    """Serialize a VoteMatrix as fixed-width ``.ord`` records.

    Fields the parser ignores (state code, district, state name) are blank.
    Ids must fit in 5 characters and names in 11.
    """
    party_codes = {"D": 100, "R": 200, "I": 328, "?": 328}
    lines = []
    for member, row in zip(m.roster, m.votes):
        if len(member.id) > 5 or len(member.name) > 11:
            raise ValidationError(f"member {member.id!r} does not fit the .ord layout")
        head = (
            f"{congress:3d}{member.id:>5}{'':12}{party_codes[member.party]:>3d}"
            f"{'':2}{member.name:<11}"
        )
        lines.append(head + "".join(_RAW_FOR_VALUE[int(v)] for v in row))
    return ("\n".join(lines) + "\n").encode("ascii")


def filter_near_unanimous(m: VoteMatrix, threshold: float = 0.95) -> VoteMatrix:
    """Drop roll calls whose majority share of cast votes exceeds ``threshold``.

    The share is ``max(yea, nay) / (yea + nay)``; abstentions are not counted.
    Roll calls on which nobody voted are dropped as well.
    """
    if not 0.5 < threshold <= 1.0:
        raise ValidationError(f"threshold must lie in (0.5, 1.0], got {threshold}")
    yea = (m.votes == YEA).sum(axis=0)
    nay = (m.votes == NAY).sum(axis=0)
    cast = yea + nay
    with np.errstate(invalid="ignore", divide="ignore"):
        share = np.maximum(yea, nay) / cast
    keep = (cast > 0) & (share <= threshold)
    return VoteMatrix(
        m.roster,
        m.votes[:, keep],
        tuple(rid for rid, k in zip(m.rollcall_ids, keep) if k),
    )


def exclude_members(m: VoteMatrix, member_ids) -> VoteMatrix:
    """Return ``m`` without the given members (e.g. a president's row)."""
    drop = set(member_ids)
    unknown = drop - {mem.id for mem in m.roster}
    if unknown:
        raise ValidationError(f"unknown member ids: {sorted(unknown)}")
    keep = [i for i, mem in enumerate(m.roster) if mem.id not in drop]
    return VoteMatrix(
        tuple(m.roster[i] for i in keep), m.votes[keep], m.rollcall_ids
    )


def generate_synthetic(
    n_per_bloc: int, m: int, flip_prob: float, seed: int
) -> VoteMatrix:
    """Two voting blocs with independent per-vote defections.

    Bloc A (party ``D``, ids ``A001``...) ideally votes +1 on every roll call
    and bloc B (party ``R``, ids ``B001``...) ideally votes -1. Each cast vote
    is flipped with probability ``flip_prob``. Bloc A occupies the first
    ``n_per_bloc`` rows.
    """
    if n_per_bloc < 1 or m < 1:
        raise ValidationError("n_per_bloc and m must both be at least 1")
    if not 0.0 <= flip_prob < 0.5:
        raise ValidationError(f"flip_prob must lie in [0, 0.5), got {flip_prob}")
    rng = np.random.default_rng(seed)
    ideal = np.repeat(np.array([YEA, NAY], dtype=np.int8), n_per_bloc)[:, None]
    flips = rng.random((2 * n_per_bloc, m)) < flip_prob
    votes = np.where(flips, -ideal, ideal).astype(np.int8)
    roster = tuple(
        Member(f"{bloc}{k + 1:03d}", f"{bloc}{k + 1:03d}", party)
        for bloc, party in (("A", "D"), ("B", "R"))
        for k in range(n_per_bloc)
    )
    return VoteMatrix(roster, votes, tuple(f"v{k + 1}" for k in range(m)))
