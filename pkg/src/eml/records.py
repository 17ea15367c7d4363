"""Decision-record storage format: one comma-separated line per click.

Re-seller lines carry 7 fields (remaining_usage, g, p_r, delta, app_type,
choice Y|N, timestamp), buyer lines 8 (usage_requirement, u, q_o, q_s, p_o,
p_r, choice SHARING|ONDEMAND|NONE, timestamp). Numerics use 6 decimals,
timestamps are integer UTC seconds, so format -> parse -> format is
byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .market import BuyerChoice, ResellerChoice


class RecordFormatError(ValueError):
    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class BuyerRecord:
    usage: float
    u: float
    q_o: float
    q_s: float
    p_o: float
    p_r: float
    choice: BuyerChoice
    timestamp: int


@dataclass(frozen=True)
class ResellerRecord:
    usage_remaining: float
    g: float
    p_r: float
    delta: float
    app_type: str
    choice: ResellerChoice
    timestamp: int


def _num(x):
    return f"{x:.6f}"


def format_record(rec) -> str:
    if isinstance(rec, BuyerRecord):
        return ",".join([_num(rec.usage), _num(rec.u), _num(rec.q_o),
                         _num(rec.q_s), _num(rec.p_o), _num(rec.p_r),
                         rec.choice.value, str(rec.timestamp)])
    if isinstance(rec, ResellerRecord):
        return ",".join([_num(rec.usage_remaining), _num(rec.g),
                         _num(rec.p_r), _num(rec.delta), rec.app_type,
                         rec.choice.value, str(rec.timestamp)])
    raise TypeError(f"not a record: {rec!r}")


def _parse_float(raw, lineno, what):
    try:
        v = float(raw)
    except ValueError:
        raise RecordFormatError(lineno, f"bad {what}: {raw!r}") from None
    if not math.isfinite(v):
        raise RecordFormatError(lineno, f"non-finite {what}: {raw!r}")
    return v


def _parse_ts(raw, lineno):
    try:
        return int(raw)
    except ValueError:
        raise RecordFormatError(lineno, f"bad timestamp: {raw!r}") from None


def parse_line(line: str, lineno: int = 1):
    """Parse one stored line into a BuyerRecord or ResellerRecord.

    The field count disambiguates the two layouts. Raises RecordFormatError
    with the line number on any malformed content.
    """
    fields = line.rstrip("\n").split(",")
    if len(fields) == 8:
        nums = [_parse_float(f, lineno, f"field {i + 1}")
                for i, f in enumerate(fields[:6])]
        try:
            choice = BuyerChoice(fields[6])
        except ValueError:
            raise RecordFormatError(lineno, f"bad buyer choice: {fields[6]!r}") \
                from None
        return BuyerRecord(*nums, choice, _parse_ts(fields[7], lineno))
    if len(fields) == 7:
        nums = [_parse_float(f, lineno, f"field {i + 1}")
                for i, f in enumerate(fields[:4])]
        app = fields[4]
        if not app:
            raise RecordFormatError(lineno, "empty app_type")
        try:
            choice = ResellerChoice(fields[5])
        except ValueError:
            raise RecordFormatError(lineno,
                                    f"bad re-seller choice: {fields[5]!r}") \
                from None
        return ResellerRecord(*nums, app, choice, _parse_ts(fields[6], lineno))
    raise RecordFormatError(lineno, f"expected 7 or 8 fields, got {len(fields)}")


def parse_records(text: str) -> list:
    """Parse a whole export; line numbers count physical lines from 1 and
    blank lines are skipped."""
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        out.append(parse_line(line, i))
    return out


def read_records(path) -> list:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_records(fh.read())
