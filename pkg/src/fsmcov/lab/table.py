"""The published relation matrix between the eleven graph criteria."""

from __future__ import annotations

from ..errors import UnknownPairError

ORDER = ("NC", "EC", "BC", "EPC", "PPC", "BPC", "SRTC", "CRTC", "WMC", "APC", "BIC")

# Row criterion relative to column criterion:
# S subsumes, E equal, I incomparable, NS does not subsume,
# N not compared, IorS undecided between I and S.
_ROWS = {
    "NC":   "-  NS NS NS NS NS I  I  NS NS NS",
    "EC":   "S  -  E  NS NS NS I  I  NS NS NS",
    "BC":   "S  E  -  NS NS NS I  I  NS NS NS",
    "EPC":  "S  S  S  -  I  I  N  N  IorS NS N",
    "PPC":  "S  S  S  I  -  IorS S S IorS NS N",
    "BPC":  "S  S  S  I  NS -  N  N  IorS NS N",
    "SRTC": "I  I  I  N  NS N  -  NS N  NS N",
    "CRTC": "I  I  I  N  NS N  S  -  N  NS N",
    "WMC":  "S  S  S  NS NS NS N  N  -  NS N",
    "APC":  "S  S  S  S  S  S  S  S  S  -  S",
    "BIC":  "S  S  S  N  N  N  N  N  N  NS -",
}

TABLE = {}
for _row, _line in _ROWS.items():
    for _col, _entry in zip(ORDER, _line.split()):
        if _entry != "-":
            TABLE[(_row, _col)] = _entry

ENTRIES = ("S", "E", "I", "N", "NS", "IorS")


def _kind(c) -> str:
    return c.upper() if isinstance(c, str) else c.kind


def expected_relation(c1, c2) -> str:
    """Entry for row ``c1``, column ``c2`` (criteria or their short names)."""
    key = (_kind(c1), _kind(c2))
    if key not in TABLE:
        raise UnknownPairError(f"no table entry for {key[0]} vs {key[1]}")
    return TABLE[key]


def cells():
    """All non-diagonal cells in row-major order."""
    return [(r, c, TABLE[(r, c)]) for r in ORDER for c in ORDER if r != c]
